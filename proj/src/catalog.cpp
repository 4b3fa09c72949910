#include "bilops/catalog.hpp"

#include <algorithm>
#include <map>

namespace bilops {

namespace {

[[noreturn]] void bad_signature(const OpId& op, const std::string& expected,
                                const TensorField& s1, const TensorField& s2) {
    throw SignatureError(op_name(op.tag) + " expects " + expected + "; got " +
                         kind_str(s1.kind(), s1.degree()) + " vol^" + to_string(s1.twist()) +
                         " and " + kind_str(s2.kind(), s2.degree()) + " vol^" +
                         to_string(s2.twist()));
}

// Densities are 0-forms; accept either spelling in the form-family arms.
TensorField as_form(const TensorField& s) {
    if (s.kind() != Kind::Scalar) return s;
    TensorField out(Kind::Form, 0, s.n(), s.twist());
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs()) out.add(k.first, k.second, c);
    return out;
}

// Pointwise product arm shared by Z / Z1 / Z2.
TensorField pointwise(const OpId& op, const TensorField& s1, const TensorField& s2) {
    if (s1.kind() == Kind::Scalar || s2.kind() == Kind::Scalar) return wedge(s1, s2);
    if (s1.kind() == Kind::Form && s2.kind() == Kind::VVForm) return wedge_vvform(s1, s2);
    if (s1.kind() == s2.kind() &&
        (s1.kind() == Kind::Form || s1.kind() == Kind::Polyvector ||
         s1.kind() == Kind::Symtensor))
        return wedge(s1, s2);
    bad_signature(op, "a pointwise-multipliable pair", s1, s2);
}

// The twisted first-order family on forms:
//   (w1 vol^mu, w2 vol^nu) -> (nu (-1)^p dw1 ^ w2 - mu w1 ^ dw2) vol^(mu+nu).
TensorField p6_core(const TensorField& s1, const TensorField& s2) {
    Rational mu = s1.twist(), nu = s2.twist();
    int sgn = s1.degree() % 2 ? -1 : 1;
    TensorField out = wedge(ext_d(s1), s2) * (nu * sgn);
    out.add_scaled(wedge(s1, ext_d(s2)), -mu);
    return out;
}

// Derivative of every coefficient along the coordinate direction b.
TensorField coordinate_derivative(const TensorField& s, int b) {
    TensorField out = TensorField::zero_like(s);
    for (const auto& [k, c] : s.coeffs()) {
        if (k.second[b] == 0) continue;
        std::vector<int> e = k.second;
        e[b] -= 1;
        out.add(k.first, e, c * k.second[b]);
    }
    return out;
}

TensorField contract_direction(const TensorField& form, int b) {
    VectorFieldPoly xi;
    xi.n = form.n();
    xi.comp.resize(form.n());
    xi.comp[b] = poly_monomial(std::vector<int>(form.n(), 0), 1);
    return contract(xi, form);
}

TensorField form_slice(const TensorField& vv, int slot) {
    TensorField part(Kind::Form, vv.degree(), vv.n(), 0);
    for (const auto& [k, c] : vv.coeffs())
        if (k.first.vec == slot) part.add(FiberKey{k.first.mask, {}, -1}, k.second, c);
    return part;
}

TensorField form_to_vv(const TensorField& form, int slot) {
    TensorField out(Kind::VVForm, form.degree(), form.n(), 0);
    for (const auto& [k, c] : form.coeffs())
        out.add(FiberKey{k.first.mask, {}, slot}, k.second, c);
    return out;
}

// Frolicher-Nijenhuis bracket on vector-valued forms, evaluated on the
// coordinate decomposition phi ( d_b (constant vector slots, so the slot
// brackets vanish and the Lie derivatives reduce to coordinate derivatives).
TensorField nijenhuis(const TensorField& s1, const TensorField& s2) {
    int p = s1.degree();
    int psgn = p % 2 ? -1 : 1;
    TensorField out(Kind::VVForm, p + s2.degree(), s1.n(), 0);
    for (int b1 = 0; b1 < s1.n(); ++b1) {
        TensorField phi = form_slice(s1, b1);
        if (phi.is_zero()) continue;
        TensorField dphi = ext_d(phi);
        for (int b2 = 0; b2 < s1.n(); ++b2) {
            TensorField psi = form_slice(s2, b2);
            if (psi.is_zero()) continue;
            // phi ^ (d_b1 psi) ( d_b2
            out.add_scaled(form_to_vv(wedge(phi, coordinate_derivative(psi, b1)), b2), 1);
            // -(d_b2 phi) ^ psi ( d_b1
            out.add_scaled(form_to_vv(wedge(coordinate_derivative(phi, b2), psi), b1), -1);
            // (-1)^p d phi ^ i_b1 psi ( d_b2
            if (psi.degree() >= 1)
                out.add_scaled(form_to_vv(wedge(dphi, contract_direction(psi, b1)), b2), psgn);
            // (-1)^p i_b2 phi ^ d psi ( d_b1
            if (phi.degree() >= 1)
                out.add_scaled(form_to_vv(wedge(contract_direction(phi, b2), ext_d(psi)), b1),
                               psgn);
        }
    }
    return out;
}

TensorField t2_arm(const TensorField& s1, const TensorField& s2) {
    // (2 f''' g + 3 f'' g' - 3 f' g'' - 2 f g''') vol^(5/3) on the line
    auto dk = [&](const TensorField& s, int k) {
        TensorField out = s;
        for (int t = 0; t < k; ++t) out = coordinate_derivative(out, 0);
        return out;
    };
    auto mul = [&](const TensorField& a, const TensorField& b) {
        TensorField out(Kind::Scalar, 0, 1, rat(5, 3));
        for (const auto& [ka, ca] : a.coeffs())
            for (const auto& [kb, cb] : b.coeffs())
                out.add(FiberKey{}, {ka.second[0] + kb.second[0]}, ca * cb);
        return out;
    };
    return mul(dk(s1, 3), s2) * rat(2) + mul(dk(s1, 2), dk(s2, 1)) * rat(3) +
           mul(dk(s1, 1), dk(s2, 2)) * rat(-3) + mul(s1, dk(s2, 3)) * rat(-2);
}

TensorField hessian_pairing(const TensorField& s1, const TensorField& s2) {
    // f_11 g_22 + f_22 g_11 - 2 f_12 g_12, landing in vol^2; invariant only
    // under divergence-free fields.
    auto dd = [&](const TensorField& s, int i, int j) {
        return coordinate_derivative(coordinate_derivative(s, i), j);
    };
    auto mul = [&](const TensorField& a, const TensorField& b) {
        TensorField out(Kind::Scalar, 0, 2, rat(2));
        for (const auto& [ka, ca] : a.coeffs())
            for (const auto& [kb, cb] : b.coeffs()) {
                std::vector<int> e = ka.second;
                for (int t = 0; t < 2; ++t) e[t] += kb.second[t];
                out.add(FiberKey{}, e, ca * cb);
            }
        return out;
    };
    return mul(dd(s1, 0, 0), dd(s2, 1, 1)) + mul(dd(s1, 1, 1), dd(s2, 0, 0)) +
           mul(dd(s1, 0, 1), dd(s2, 0, 1)) * rat(-2);
}

}  // namespace

TensorField apply(const OpId& op, const TensorField& s1, const TensorField& s2) {
    if (s1.n() != s2.n()) throw SignatureError("operands live on different dimensions");
    int n = s1.n();
    const bool form_family =
        op.tag == OpTag::Z1 || op.tag == OpTag::P1 || op.tag == OpTag::P1s1 ||
        op.tag == OpTag::P5 || op.tag == OpTag::P6 || op.tag == OpTag::S1 ||
        op.tag == OpTag::S2 || op.tag == OpTag::S2s || op.tag == OpTag::T1 ||
        op.tag == OpTag::T1s;
    if (form_family) {
        TensorField f1 = as_form(s1), f2 = as_form(s2);
        if (f1.kind() != s1.kind() || f2.kind() != s2.kind()) {
            OpId inner = op;
            return apply(inner, f1, f2);
        }
    }
    if (op.tag == OpTag::S1s && s1.kind() == Kind::Scalar)
        return apply(op, as_form(s1), s2);
    switch (op.tag) {
        case OpTag::Z:
            return pointwise(op, s1, s2);
        case OpTag::Z1:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form ||
                s1.degree() + s2.degree() > n)
                bad_signature(op, "twisted forms with p+q <= n", s1, s2);
            return wedge(s1, s2);
        case OpTag::Z2:
            if (s1.kind() != Kind::Polyvector || s2.kind() != Kind::Polyvector ||
                s1.degree() + s2.degree() > n)
                bad_signature(op, "twisted polyvectors with p+q <= n", s1, s2);
            return wedge(s1, s2);
        case OpTag::P1:
            if (s1.kind() != Kind::Form || s1.twist() != 0 || s2.kind() != Kind::Form)
                bad_signature(op, "(untwisted form, twisted form)", s1, s2);
            return wedge(ext_d(s1), s2);
        case OpTag::P1s1:
            if (s1.kind() != Kind::Form || s1.twist() != 0 || s2.kind() != Kind::Form ||
                s2.twist() != 0)
                bad_signature(op, "(untwisted form, untwisted form)", s1, s2);
            return ext_d(wedge(s1, s2));
        case OpTag::P2: {
            if (s1.kind() != Kind::Polyvector || s1.degree() != 1 || s1.twist() != 0)
                bad_signature(op, "(vector field, any field)", s1, s2);
            return lie_derivative(as_vector_field(s1), s2);
        }
        case OpTag::P2s1:
            if (s1.kind() != Kind::Scalar || s2.kind() != Kind::Scalar ||
                s1.twist() + s2.twist() != 1)
                bad_signature(op, "(vol^a, vol^(1-a)) densities", s1, s2);
            return p6_core(s1, s2);
        case OpTag::P3:
            if (s1.kind() != Kind::Symtensor || s2.kind() != Kind::Symtensor ||
                s1.twist() != 0 || s2.twist() != 0)
                bad_signature(op, "(symtensor, symtensor)", s1, s2);
            return poisson(s1, s2);
        case OpTag::P4:
            if (s1.kind() != Kind::VVForm || s2.kind() != Kind::VVForm || s1.twist() != 0 ||
                s2.twist() != 0)
                bad_signature(op, "(vector-valued form, vector-valued form)", s1, s2);
            return nijenhuis(s1, s2);
        case OpTag::N: {
            if (s1.kind() != Kind::VVForm || s2.kind() != Kind::VVForm || s1.twist() != 0 ||
                s2.twist() != 0)
                bad_signature(op, "(vector-valued form, vector-valued form)", s1, s2);
            TensorField raw = nijenhuis(vvform_traceless(s1), vvform_traceless(s2));
            return vvform_traceless(raw);
        }
        case OpTag::P5:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form || s1.twist() != 0 ||
                s2.twist() != 0)
                bad_signature(op, "(untwisted form, untwisted form)", s1, s2);
            return wedge(ext_d(s1), s2) * (op.a * (s1.degree() % 2 ? -1 : 1)) +
                   wedge(s1, ext_d(s2)) * op.b;
        case OpTag::P6:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form ||
                (s1.twist() == 0 && s2.twist() == 0) ||
                s1.degree() + s2.degree() + 1 > n)
                bad_signature(op, "twisted forms, twists not both zero, p+q+1 <= n", s1, s2);
            return p6_core(s1, s2);
        case OpTag::P7:
            if (s1.kind() != Kind::Polyvector || s2.kind() != Kind::Polyvector ||
                s1.twist() != 0 || s2.twist() != 0)
                bad_signature(op, "(polyvector, polyvector)", s1, s2);
            return schouten(s1, s2);
        case OpTag::P8: {
            if (s1.kind() != Kind::Polyvector || s2.kind() != Kind::Polyvector ||
                s1.degree() + s2.degree() > n || s1.degree() + s2.degree() < 1)
                bad_signature(op, "twisted polyvectors with 1 <= p+q <= n", s1, s2);
            Rational mu = s1.twist(), nu = s2.twist();
            int psgn = s1.degree() % 2 ? -1 : 1;
            TensorField out(Kind::Polyvector, s1.degree() + s2.degree() - 1, n, mu + nu);
            if (s1.degree() > 0)
                out.add_scaled(wedge(div_polyvector(s1), s2), (nu - 1) * (mu + nu - 1));
            if (s2.degree() > 0)
                out.add_scaled(wedge(s1, div_polyvector(s2)), (mu - 1) * (mu + nu - 1) * psgn);
            out.add_scaled(div_polyvector(wedge(s1, s2)), -(mu - 1) * (nu - 1));
            return out;
        }
        case OpTag::S1:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form || s1.twist() != 0 ||
                s2.twist() != 0 || s1.degree() + s2.degree() + 2 > n)
                bad_signature(op, "(untwisted forms with p+q+2 <= n)", s1, s2);
            return wedge(ext_d(s1), ext_d(s2));
        case OpTag::S1s:
            if (s1.kind() != Kind::Form || s1.twist() != 0 ||
                s2.kind() != Kind::Polyvector || s2.twist() != 0 ||
                s2.degree() > s1.degree() + 1)
                bad_signature(op, "(untwisted form, polyvector of degree <= p+1)", s1, s2);
            return ext_d(contract_polyvector(s2, ext_d(s1)));
        case OpTag::S2:
            if (s1.kind() != Kind::Form || s1.degree() != n - 1 || s1.twist() != 0 ||
                s2.kind() != Kind::Form)
                bad_signature(op, "(untwisted (n-1)-form, twisted form)", s1, s2);
            return p6_core(top_form_to_scalar(ext_d(s1)), s2);
        case OpTag::S2s: {
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form ||
                s1.degree() + s2.degree() != n - 1 || s1.twist() + s2.twist() != -1)
                bad_signature(op, "(form vol^k, form vol^(-k-1)) with p+q = n-1", s1, s2);
            return ext_d(top_form_to_scalar(p6_core(s1, s2)));
        }
        case OpTag::T1:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form ||
                s1.degree() != n - 1 || s2.degree() != n - 1 || s1.twist() != 0 ||
                s2.twist() != 0)
                bad_signature(op, "(untwisted (n-1)-forms)", s1, s2);
            return p6_core(top_form_to_scalar(ext_d(s1)), top_form_to_scalar(ext_d(s2)));
        case OpTag::T1s:
            if (s1.kind() != Kind::Form || s2.kind() != Kind::Form ||
                s1.degree() != n - 1 || s2.degree() != n - 1 || s1.twist() != 0 ||
                s2.twist() != -2)
                bad_signature(op, "(untwisted (n-1)-form, (n-1)-form vol^-2)", s1, s2);
            return ext_d(top_form_to_scalar(p6_core(top_form_to_scalar(ext_d(s1)), s2)));
        case OpTag::T2:
            if (n != 1 || s1.kind() != Kind::Scalar || s2.kind() != Kind::Scalar ||
                s1.twist() != rat(-2, 3) || s2.twist() != rat(-2, 3))
                bad_signature(op, "(vol^-2/3, vol^-2/3) densities on the line", s1, s2);
            return t2_arm(s1, s2);
        case OpTag::HessianPairing:
            if (n != 2 || s1.kind() != Kind::Scalar || s2.kind() != Kind::Scalar ||
                s1.twist() != 0 || s2.twist() != 0)
                bad_signature(op, "(function, function) on the plane", s1, s2);
            return hessian_pairing(s1, s2);
    }
    throw ConfigError("unknown operator tag");
}

namespace {

const std::vector<OpInfo> kRegistry = {
    {OpTag::Z, "Z", 0, "(s, t) -> s*t (pointwise product / wedge)", "Z(s,t) = s t", true, 1, 0},
    {OpTag::Z1, "Z1", 0, "(form^p vol^l, form^q vol^m) -> form^(p+q) vol^(l+m), p+q <= n",
     "Z1(w1 vol^l, w2 vol^m) = (w1 ^ w2) vol^(l+m)", true, 1, 0},
    {OpTag::Z2, "Z2", 0,
     "(pv^p vol^a, pv^q vol^b) -> pv^(p+q) vol^(a+b), p+q <= n",
     "Z2(X vol^a, Y vol^b) = (X ^ Y) vol^(a+b)", true, 1, 0},
    {OpTag::P1, "P1", 1, "(form^p, form^q vol^m) -> form^(p+q+1) vol^m",
     "P1(w, t) = dw ^ t", true, 1, 0},
    {OpTag::P1s1, "P1s1", 1, "(form^p, form^q) -> form^(p+q+1)",
     "P1s1(t1, t2) = d(t1 ^ t2)", true, 1, 0},
    {OpTag::P2, "P2", 1, "(vector field, any tensor field) -> same kind",
     "P2(X, s) = L_X s", true, 1, 0},
    {OpTag::P2s1, "P2s1", 1, "(vol^a, vol^(1-a)) -> form^1 vol",
     "P2s1(f vol^a, g vol^b) = (b df g - a f dg) vol, a+b = 1", true, 1, 0},
    {OpTag::P3, "P3", 1, "(symtensor^p, symtensor^q) -> symtensor^(p+q-1)",
     "P3(f, g) = sum_i df/dp_i dg/dx_i - df/dx_i dg/dp_i", true, 1, 0},
    {OpTag::P4, "P4", 1, "(form^p(x)Vect, form^q(x)Vect) -> form^(p+q)(x)Vect",
     "P4(w1(x)X, w2(x)Y) = w1^w2 (x)[X,Y] + (w1^L_X w2 + (-1)^p dw1^i_X w2)(x)Y - "
     "(L_Y w1^w2 - (-1)^p i_Y w1^dw2)(x)X",
     true, 2, 0},
    {OpTag::N, "N", 1, "trace-free part of P4 on trace-free inputs",
     "N(t1, t2) = traceless(P4(traceless t1, traceless t2))", true, 2, 0},
    {OpTag::P5, "P5", 1, "(form^p, form^q) -> form^(p+q+1); scalars (a,b)",
     "P5(w1, w2) = (-1)^p a dw1^w2 + b w1^dw2", true, 1, 0},
    {OpTag::P6, "P6", 1,
     "(form^p vol^mu, form^q vol^nu) -> form^(p+q+1) vol^(mu+nu), |mu|^2+|nu|^2 != 0",
     "P6(w1 vol^mu, w2 vol^nu) = (nu (-1)^p dw1^w2 - mu w1^dw2) vol^(mu+nu)", true, 1, 0},
    {OpTag::P7, "P7", 1, "(pv^p, pv^q) -> pv^(p+q-1)",
     "P7(X, Y) = Schouten bracket [X, Y]", true, 1, 0},
    {OpTag::P8, "P8", 1,
     "(pv^p vol^mu, pv^q vol^nu) -> pv^(p+q-1) vol^(mu+nu), p+q <= n",
     "P8(X vol^mu, Y vol^nu) = ((nu-1)(mu+nu-1) Div X ^ Y + (-1)^p (mu-1)(mu+nu-1) X ^ Div Y"
     " - (mu-1)(nu-1) Div(X^Y)) vol^(mu+nu)",
     true, 1, 0},
    {OpTag::S1, "S1", 2, "(form^p, form^q) -> form^(p+q+2), p+q+2 <= n",
     "S1(w1, w2) = dw1 ^ dw2", true, 2, 0},
    {OpTag::S1s, "S1s", 2, "(form^p, pv^k), k <= p+1 -> form^(p-k+2)",
     "S1s(w, X) = d(i_X dw)", true, 2, 0},
    {OpTag::S2, "S2", 2, "((n-1)-form, form^p vol^k) -> form^(p+1) vol^(k+1)",
     "S2(w, t) = F(dw, t) with F the first-order twisted-form family", true, 1, 0},
    {OpTag::S2s, "S2s", 2, "(form^p vol^k, form^(n-1-p) vol^(-k-1)) -> form^1",
     "S2s(a, b) = d F(a, b)", true, 1, 0},
    {OpTag::T1, "T1", 3, "((n-1)-form, (n-1)-form) -> form^1 vol^2",
     "T1(w1, w2) = F(dw1, dw2)", true, 1, 0},
    {OpTag::T1s, "T1s", 3, "((n-1)-form, (n-1)-form vol^-2) -> form^1",
     "T1s(w, t) = d F(dw, t)", true, 1, 0},
    {OpTag::T2, "T2", 3, "(vol^-2/3, vol^-2/3) -> vol^(5/3), n = 1",
     "T2(f, g) = (2 f''' g + 3 f'' g' - 3 f' g'' - 2 f g''') vol^(5/3)", true, 1, 1},
    {OpTag::HessianPairing, "hessian_pairing", 4,
     "(function, function) -> vol^2, n = 2 (divergence-free control)",
     "c(f, g) = f_11 g_22 + f_22 g_11 - 2 f_12 g_12", false, 2, 2},
};

}  // namespace

const std::vector<OpInfo>& catalog_registry() { return kRegistry; }

const OpInfo& op_info(OpTag tag) {
    for (const auto& info : kRegistry)
        if (info.tag == tag) return info;
    throw ConfigError("unknown operator tag");
}

std::string op_name(OpTag tag) { return op_info(tag).name; }

OpTag op_tag_from_name(const std::string& name) {
    for (const auto& info : kRegistry)
        if (info.name == name) return info.tag;
    throw ConfigError("unknown operator: " + name);
}

std::vector<OpInstance> default_instances(OpTag tag, int n) {
    const OpInfo& info = op_info(tag);
    if (n < info.min_n || (info.max_n && n > info.max_n)) return {};
    const Rational half = rat(1, 2), third = rat(1, 3);
    switch (tag) {
        case OpTag::Z:
            return {{{Kind::Scalar, 0, half}, {Kind::Form, 1, third}},
                    {{Kind::Form, 1, 0}, {Kind::Form, n > 1 ? 1 : 0, 0}}};
        case OpTag::Z1:
            return {{{Kind::Form, 1, half}, {Kind::Form, n > 1 ? 1 : 0, third}}};
        case OpTag::Z2:
            return {{{Kind::Polyvector, 1, half}, {Kind::Polyvector, n > 1 ? 1 : 0, third}}};
        case OpTag::P1:
            return {{{Kind::Form, 0, 0}, {Kind::Form, 0, third}},
                    n >= 2 ? OpInstance{{Kind::Form, 0, 0}, {Kind::Form, 1, half}}
                           : OpInstance{{Kind::Form, 0, 0}, {Kind::Form, 0, half}}};
        case OpTag::P1s1:
            return {{{Kind::Form, 0, 0}, {Kind::Form, n > 1 ? 1 : 0, 0}}};
        case OpTag::P2: {
            std::vector<OpInstance> out = {
                {{Kind::Polyvector, 1, 0}, {Kind::Scalar, 0, half}},
                {{Kind::Polyvector, 1, 0}, {Kind::Form, std::min(1, n), 0}},
                {{Kind::Polyvector, 1, 0}, {Kind::Symtensor, 2, 0}}};
            if (n >= 2) out.push_back({{Kind::Polyvector, 1, 0}, {Kind::VVForm, 1, 0}});
            return out;
        }
        case OpTag::P2s1:
            return {{{Kind::Scalar, 0, half}, {Kind::Scalar, 0, half}},
                    {{Kind::Scalar, 0, rat(-1, 3)}, {Kind::Scalar, 0, rat(4, 3)}}};
        case OpTag::P3:
            return {{{Kind::Symtensor, 1, 0}, {Kind::Symtensor, 2, 0}},
                    {{Kind::Symtensor, 2, 0}, {Kind::Symtensor, 2, 0}}};
        case OpTag::P4:
            return {{{Kind::VVForm, 0, 0}, {Kind::VVForm, 1, 0}},
                    {{Kind::VVForm, 1, 0}, {Kind::VVForm, 1, 0}}};
        case OpTag::N:
            if (n >= 3)
                return {{{Kind::VVForm, 0, 0}, {Kind::VVForm, 1, 0}},
                        {{Kind::VVForm, 1, 0}, {Kind::VVForm, 0, 0}}};
            return {{{Kind::VVForm, 0, 0}, {Kind::VVForm, 1, 0}},
                    {{Kind::VVForm, 1, 0}, {Kind::VVForm, 1, 0}}};
        case OpTag::P5:
            return {{{Kind::Form, 0, 0}, {Kind::Form, 0, 0}},
                    {{Kind::Form, n > 1 ? 1 : 0, 0}, {Kind::Form, 0, 0}}};
        case OpTag::P6: {
            std::vector<OpInstance> out = {{{Kind::Form, 0, half}, {Kind::Form, 0, third}},
                                           {{Kind::Form, 0, 0}, {Kind::Form, 0, rat(1)}}};
            if (n >= 3) out.push_back({{Kind::Form, 1, half}, {Kind::Form, 0, third}});
            return out;
        }
        case OpTag::P7:
            return {{{Kind::Polyvector, 1, 0}, {Kind::Polyvector, 1, 0}},
                    n >= 2 ? OpInstance{{Kind::Polyvector, 2, 0}, {Kind::Polyvector, 1, 0}}
                           : OpInstance{{Kind::Polyvector, 1, 0}, {Kind::Polyvector, 0, 0}}};
        case OpTag::P8: {
            std::vector<OpInstance> out = {
                {{Kind::Polyvector, 1, half}, {Kind::Polyvector, 0, third}}};
            if (n >= 2)
                out.push_back({{Kind::Polyvector, 1, half}, {Kind::Polyvector, 1, third}});
            if (n >= 3)
                out.push_back({{Kind::Polyvector, 2, rat(2)}, {Kind::Polyvector, 1, third}});
            return out;
        }
        case OpTag::S1: {
            if (n < 2) return {};
            std::vector<OpInstance> out = {{{Kind::Form, 0, 0}, {Kind::Form, 0, 0}}};
            if (n >= 3) out.push_back({{Kind::Form, 1, 0}, {Kind::Form, 0, 0}});
            return out;
        }
        case OpTag::S1s: {
            std::vector<OpInstance> out = {{{Kind::Form, 0, 0}, {Kind::Polyvector, 1, 0}}};
            if (n >= 2) out.push_back({{Kind::Form, 1, 0}, {Kind::Polyvector, 2, 0}});
            return out;
        }
        case OpTag::S2:
            return {{{Kind::Form, n - 1, 0}, {Kind::Form, 0, half}},
                    {{Kind::Form, n - 1, 0}, {Kind::Form, 0, rat(-1)}}};
        case OpTag::S2s: {
            std::vector<OpInstance> out = {
                {{Kind::Form, 0, half}, {Kind::Form, n - 1, rat(-3, 2)}}};
            if (n >= 2) out.push_back({{Kind::Form, 1, rat(2)}, {Kind::Form, n - 2, rat(-3)}});
            return out;
        }
        case OpTag::T1:
            return {{{Kind::Form, n - 1, 0}, {Kind::Form, n - 1, 0}}};
        case OpTag::T1s:
            return {{{Kind::Form, n - 1, 0}, {Kind::Form, n - 1, rat(-2)}}};
        case OpTag::T2:
            return {{{Kind::Scalar, 0, rat(-2, 3)}, {Kind::Scalar, 0, rat(-2, 3)}}};
        case OpTag::HessianPairing:
            return {{{Kind::Scalar, 0, 0}, {Kind::Scalar, 0, 0}}};
    }
    return {};
}

}  // namespace bilops
