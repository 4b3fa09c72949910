#include "bilops/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bilops {

Poly poly_zero() { return {}; }

Poly poly_monomial(const std::vector<int>& e, const Rational& c) {
    Poly p;
    if (c != 0) p.emplace(e, c);
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) {
        auto it = out.find(e);
        if (it == out.end()) {
            out.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(std::move(e), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    Poly out;
    if (c == 0) return out;
    for (const auto& [e, v] : a) out.emplace(e, v * c);
    return out;
}

Poly poly_derivative(const Poly& a, int var) {
    Poly out;
    for (const auto& [e, c] : a) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        out.emplace(std::move(d), c * e[var]);
    }
    return out;
}

int poly_degree(const Poly& a) {
    int d = -1;
    for (const auto& [e, c] : a)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

VectorFieldPoly VectorFieldPoly::from_monomial(const FieldMonomial& m) {
    VectorFieldPoly out;
    out.n = static_cast<int>(m.a.size());
    out.comp.resize(out.n);
    out.comp[m.b] = poly_monomial(m.a, 1);
    return out;
}

Poly VectorFieldPoly::divergence() const {
    Poly out;
    for (int i = 0; i < n; ++i) out = poly_add(out, poly_derivative(comp[i], i));
    return out;
}

int VectorFieldPoly::degree() const {
    int d = -1;
    for (const auto& c : comp) d = std::max(d, poly_degree(c));
    return d;
}

std::string kind_str(Kind k, int degree) {
    switch (k) {
        case Kind::Scalar: return "scalar";
        case Kind::Form: return "form(" + std::to_string(degree) + ")";
        case Kind::Polyvector: return "polyvector(" + std::to_string(degree) + ")";
        case Kind::Symtensor: return "symtensor(" + std::to_string(degree) + ")";
        case Kind::VVForm: return "vvform(" + std::to_string(degree) + ")";
    }
    return "?";
}

TensorField::TensorField(Kind kind, int degree, int n, const Rational& twist)
    : kind_(kind), degree_(degree), n_(n), twist_(twist) {
    if (n < 1) throw ConfigError("dimension must be positive");
    if (degree < 0) throw ConfigError("fiber degree must be >= 0");
}

TensorField TensorField::scalar(int n, const Poly& coeff, const Rational& twist) {
    TensorField f(Kind::Scalar, 0, n, twist);
    for (const auto& [e, c] : coeff) f.add(FiberKey{}, e, c);
    return f;
}

TensorField TensorField::zero_like(const TensorField& s) {
    TensorField f(s.kind_, s.degree_, s.n_, s.twist_);
    f.validity_ = s.validity_;
    return f;
}

void TensorField::add(const FiberKey& fk, const std::vector<int>& xdeg, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(xdeg.size()) != n_) throw ConfigError("x-multidegree arity mismatch");
    auto key = std::make_pair(fk, xdeg);
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        coeffs_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

bool TensorField::is_zero_within_validity() const {
    for (const auto& [k, c] : coeffs_) {
        int deg = std::accumulate(k.second.begin(), k.second.end(), 0);
        if (deg <= validity_) return false;
    }
    return true;
}

int TensorField::max_x_degree() const {
    int d = -1;
    for (const auto& [k, c] : coeffs_)
        d = std::max(d, std::accumulate(k.second.begin(), k.second.end(), 0));
    return d;
}

TensorField TensorField::operator+(const TensorField& o) const {
    if (kind_ != o.kind_ || degree_ != o.degree_ || n_ != o.n_ || twist_ != o.twist_)
        throw SignatureError("cannot add " + kind_str(kind_, degree_) + " and " +
                             kind_str(o.kind_, o.degree_));
    TensorField out = *this;
    out.validity_ = std::min(validity_, o.validity_);
    for (const auto& [k, c] : o.coeffs_) out.add(k.first, k.second, c);
    return out;
}

TensorField& TensorField::add_scaled(const TensorField& o, const Rational& c) {
    if (kind_ != o.kind_ || degree_ != o.degree_ || n_ != o.n_ || twist_ != o.twist_)
        throw SignatureError("cannot combine " + kind_str(kind_, degree_) + " and " +
                             kind_str(o.kind_, o.degree_));
    validity_ = std::min(validity_, o.validity_);
    if (c == 0) return *this;
    for (const auto& [k, v] : o.coeffs_) {
        auto it = coeffs_.find(k);
        if (it == coeffs_.end()) {
            coeffs_.emplace(k, v * c);
        } else {
            it->second += v * c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    return *this;
}

TensorField TensorField::operator*(const Rational& c) const {
    TensorField out = zero_like(*this);
    if (c == 0) return out;
    for (const auto& [k, v] : coeffs_) out.coeffs_.emplace(k, v * c);
    return out;
}

bool TensorField::operator==(const TensorField& o) const {
    return kind_ == o.kind_ && degree_ == o.degree_ && n_ == o.n_ && twist_ == o.twist_ &&
           coeffs_ == o.coeffs_;
}

std::string TensorField::str() const {
    std::ostringstream out;
    out << kind_str(kind_, degree_);
    if (twist_ != 0) out << " vol^" << to_string(twist_);
    if (coeffs_.empty()) out << " 0";
    for (const auto& [k, c] : coeffs_) {
        out << " + " << to_string(c);
        for (int i = 0; i < n_; ++i)
            if (k.second[i] > 0) out << "*x" << (i + 1) << (k.second[i] > 1 ? "^" + std::to_string(k.second[i]) : "");
        for (int i = 0; i < n_; ++i)
            if (k.first.mask & (1u << i))
                out << (kind_ == Kind::Form || kind_ == Kind::VVForm ? "*dx" : "*dv") << (i + 1);
        if (!k.first.mom.empty())
            for (int i = 0; i < n_; ++i)
                for (int t = 0; t < k.first.mom[i]; ++t) out << "*p" << (i + 1);
        if (k.first.vec >= 0) out << "*e" << (k.first.vec + 1);
    }
    return out.str();
}

namespace {

int bits_below(unsigned mask, int i) { return __builtin_popcount(mask & ((1u << i) - 1u)); }

// dx_b ^ dx_S (or xv_b * xv_S): 0 if b in S, else Koszul sign.
bool odd_mul(unsigned mask, int b, unsigned& out, int& sign) {
    if (mask & (1u << b)) return false;
    out = mask | (1u << b);
    sign = bits_below(mask, b) % 2 == 0 ? 1 : -1;
    return true;
}

// Left interior/derivative: removes index b from S.
bool odd_del(unsigned mask, int b, unsigned& out, int& sign) {
    if (!(mask & (1u << b))) return false;
    out = mask & ~(1u << b);
    sign = bits_below(mask, b) % 2 == 0 ? 1 : -1;
    return true;
}

}  // namespace

TensorField ext_d(const TensorField& s) {
    if (s.kind() != Kind::Form && !(s.kind() == Kind::Scalar))
        throw SignatureError("ext_d expects a form, got " + kind_str(s.kind(), s.degree()));
    int p = s.kind() == Kind::Scalar ? 0 : s.degree();
    TensorField out(Kind::Form, p + 1, s.n(), s.twist());
    if (p >= s.n()) return out;
    out.set_validity(s.validity() == TensorField::kExactEverywhere
                         ? TensorField::kExactEverywhere
                         : s.validity() - 1);
    for (const auto& [k, c] : s.coeffs())
        for (int b = 0; b < s.n(); ++b) {
            if (k.second[b] == 0) continue;
            unsigned mask;
            int sign;
            if (!odd_mul(k.first.mask, b, mask, sign)) continue;
            std::vector<int> e = k.second;
            e[b] -= 1;
            out.add(FiberKey{mask, {}, -1}, e, c * k.second[b] * sign);
        }
    return out;
}

TensorField contract(const VectorFieldPoly& xi, const TensorField& s) {
    if (s.kind() != Kind::Form || s.degree() < 1)
        throw SignatureError("contract expects a form of positive degree");
    TensorField out(Kind::Form, s.degree() - 1, s.n(), s.twist());
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs())
        for (int b = 0; b < s.n(); ++b) {
            unsigned mask;
            int sign;
            if (!odd_del(k.first.mask, b, mask, sign)) continue;
            for (const auto& [e2, c2] : xi.comp[b]) {
                std::vector<int> e = k.second;
                for (int t = 0; t < s.n(); ++t) e[t] += e2[t];
                out.add(FiberKey{mask, {}, -1}, e, c * c2 * sign);
            }
        }
    return out;
}

TensorField wedge(const TensorField& a, const TensorField& b) {
    if (a.n() != b.n()) throw SignatureError("wedge: dimension mismatch");
    Rational tw = a.twist() + b.twist();
    auto scalar_side = [&](const TensorField& s, const TensorField& t) {
        TensorField out(t.kind(), t.degree(), t.n(), tw);
        out.set_validity(std::min(s.validity(), t.validity()));
        for (const auto& [ks, cs] : s.coeffs())
            for (const auto& [kt, ct] : t.coeffs()) {
                std::vector<int> e = ks.second;
                for (int i = 0; i < t.n(); ++i) e[i] += kt.second[i];
                out.add(kt.first, e, cs * ct);
            }
        return out;
    };
    if (a.kind() == Kind::Scalar) return scalar_side(a, b);
    if (b.kind() == Kind::Scalar) return scalar_side(b, a);
    if (a.kind() == Kind::Symtensor && b.kind() == Kind::Symtensor) {
        TensorField out(Kind::Symtensor, a.degree() + b.degree(), a.n(), tw);
        out.set_validity(std::min(a.validity(), b.validity()));
        for (const auto& [ka, ca] : a.coeffs())
            for (const auto& [kb, cb] : b.coeffs()) {
                std::vector<int> e = ka.second, mom = ka.first.mom;
                if (mom.empty()) mom.assign(a.n(), 0);
                for (int i = 0; i < a.n(); ++i) {
                    e[i] += kb.second[i];
                    if (!kb.first.mom.empty()) mom[i] += kb.first.mom[i];
                }
                out.add(FiberKey{0, mom, -1}, e, ca * cb);
            }
        return out;
    }
    bool forms = a.kind() == Kind::Form && b.kind() == Kind::Form;
    bool polyvecs = a.kind() == Kind::Polyvector && b.kind() == Kind::Polyvector;
    if (!forms && !polyvecs)
        throw SignatureError("wedge: incompatible kinds " + kind_str(a.kind(), a.degree()) +
                             ", " + kind_str(b.kind(), b.degree()));
    int deg = a.degree() + b.degree();
    TensorField out(a.kind(), deg, a.n(), tw);
    out.set_validity(std::min(a.validity(), b.validity()));
    if (deg > a.n()) return out;
    for (const auto& [ka, ca] : a.coeffs())
        for (const auto& [kb, cb] : b.coeffs()) {
            if (ka.first.mask & kb.first.mask) continue;
            // Koszul sign of merging the two ascending blocks.
            int sign = 1;
            for (int i = 0; i < a.n(); ++i)
                if (kb.first.mask & (1u << i))
                    if (__builtin_popcount(ka.first.mask >> (i + 1)) % 2) sign = -sign;
            std::vector<int> e = ka.second;
            for (int i = 0; i < a.n(); ++i) e[i] += kb.second[i];
            out.add(FiberKey{ka.first.mask | kb.first.mask, {}, -1}, e, ca * cb * sign);
        }
    return out;
}

TensorField wedge_vvform(const TensorField& form, const TensorField& vv) {
    if (form.kind() != Kind::Form && form.kind() != Kind::Scalar)
        throw SignatureError("wedge_vvform expects a form first");
    if (vv.kind() != Kind::VVForm) throw SignatureError("wedge_vvform expects a vvform second");
    int fdeg = form.kind() == Kind::Scalar ? 0 : form.degree();
    int deg = fdeg + vv.degree();
    TensorField out(Kind::VVForm, deg, vv.n(), form.twist() + vv.twist());
    out.set_validity(std::min(form.validity(), vv.validity()));
    if (deg > vv.n()) return out;
    for (const auto& [ka, ca] : form.coeffs())
        for (const auto& [kb, cb] : vv.coeffs()) {
            if (ka.first.mask & kb.first.mask) continue;
            int sign = 1;
            for (int i = 0; i < vv.n(); ++i)
                if (kb.first.mask & (1u << i))
                    if (__builtin_popcount(ka.first.mask >> (i + 1)) % 2) sign = -sign;
            std::vector<int> e = ka.second;
            for (int i = 0; i < vv.n(); ++i) e[i] += kb.second[i];
            out.add(FiberKey{ka.first.mask | kb.first.mask, {}, kb.first.vec}, e,
                    ca * cb * sign);
        }
    return out;
}

TensorField contract_polyvector(const TensorField& pv, const TensorField& form) {
    if (pv.kind() != Kind::Polyvector || form.kind() != Kind::Form)
        throw SignatureError("contract_polyvector expects (polyvector, form)");
    if (pv.degree() > form.degree())
        throw SignatureError("contract_polyvector: polyvector degree exceeds form degree");
    TensorField out(Kind::Form, form.degree() - pv.degree(), form.n(),
                    pv.twist() + form.twist());
    out.set_validity(std::min(pv.validity(), form.validity()));
    for (const auto& [kp, cp] : pv.coeffs())
        for (const auto& [kf, cf] : form.coeffs()) {
            unsigned fmask = kf.first.mask;
            int sign = 1;
            bool ok = true;
            for (int b = 0; b < form.n() && ok; ++b) {
                if (!(kp.first.mask & (1u << b))) continue;
                unsigned nm;
                int s;
                if (!odd_del(fmask, b, nm, s)) {
                    ok = false;
                    break;
                }
                fmask = nm;
                sign *= s;
            }
            if (!ok) continue;
            std::vector<int> e = kp.second;
            for (int i = 0; i < form.n(); ++i) e[i] += kf.second[i];
            out.add(FiberKey{fmask, {}, -1}, e, cp * cf * sign);
        }
    return out;
}

TensorField div_polyvector(const TensorField& x) {
    if (x.kind() != Kind::Polyvector)
        throw SignatureError("div_polyvector expects a polyvector");
    if (x.degree() < 1) throw SignatureError("div_polyvector needs degree >= 1");
    TensorField out(Kind::Polyvector, x.degree() - 1, x.n(), x.twist());
    out.set_validity(x.validity() == TensorField::kExactEverywhere
                         ? TensorField::kExactEverywhere
                         : x.validity() - 1);
    for (const auto& [k, c] : x.coeffs())
        for (int b = 0; b < x.n(); ++b) {
            unsigned mask;
            int sign;
            if (!odd_del(k.first.mask, b, mask, sign)) continue;
            if (k.second[b] == 0) continue;
            std::vector<int> e = k.second;
            e[b] -= 1;
            out.add(FiberKey{mask, {}, -1}, e, c * k.second[b] * sign);
        }
    return out;
}

TensorField schouten(const TensorField& x, const TensorField& y) {
    if (x.kind() != Kind::Polyvector || y.kind() != Kind::Polyvector)
        throw SignatureError("schouten expects polyvectors");
    TensorField out(Kind::Polyvector, x.degree() + y.degree() - 1, x.n(),
                    x.twist() + y.twist());
    out.set_validity(std::min(x.validity(), y.validity()) == TensorField::kExactEverywhere
                         ? TensorField::kExactEverywhere
                         : std::min(x.validity(), y.validity()) - 1);
    // [X,Y] = sum_i (-1)^(p+1) dX/dxv_i dY/dx_i - dX/dx_i dY/dxv_i, the sign
    // split that makes the bracket a graded Lie bracket on degree-shifted
    // polyvectors (and the Lie bracket on vector fields).
    int s1 = x.degree() % 2 == 1 ? 1 : -1;
    for (const auto& [kx, cx] : x.coeffs())
        for (const auto& [ky, cy] : y.coeffs())
            for (int i = 0; i < x.n(); ++i) {
                // dX/dxv_i * dY/dx_i
                unsigned mx;
                int sgx;
                if (odd_del(kx.first.mask, i, mx, sgx) && ky.second[i] > 0) {
                    if (!(mx & ky.first.mask)) {
                        int sign = sgx * s1;
                        for (int t = 0; t < x.n(); ++t)
                            if (ky.first.mask & (1u << t))
                                if (__builtin_popcount(mx >> (t + 1)) % 2) sign = -sign;
                        std::vector<int> e = kx.second;
                        for (int t = 0; t < x.n(); ++t) e[t] += ky.second[t];
                        e[i] -= 1;
                        out.add(FiberKey{mx | ky.first.mask, {}, -1}, e,
                                cx * cy * ky.second[i] * sign);
                    }
                }
                // - dX/dx_i * dY/dxv_i
                unsigned my;
                int sgy;
                if (kx.second[i] > 0 && odd_del(ky.first.mask, i, my, sgy)) {
                    if (!(kx.first.mask & my)) {
                        int sign = -sgy;
                        for (int t = 0; t < x.n(); ++t)
                            if (my & (1u << t))
                                if (__builtin_popcount(kx.first.mask >> (t + 1)) % 2)
                                    sign = -sign;
                        std::vector<int> e = kx.second;
                        for (int t = 0; t < x.n(); ++t) e[t] += ky.second[t];
                        e[i] -= 1;
                        out.add(FiberKey{kx.first.mask | my, {}, -1}, e,
                                cx * cy * kx.second[i] * sign);
                    }
                }
            }
    return out;
}

TensorField poisson(const TensorField& f, const TensorField& g) {
    if (f.kind() != Kind::Symtensor || g.kind() != Kind::Symtensor)
        throw SignatureError("poisson expects symtensors");
    TensorField out(Kind::Symtensor, f.degree() + g.degree() - 1, f.n(),
                    f.twist() + g.twist());
    out.set_validity(std::min(f.validity(), g.validity()) == TensorField::kExactEverywhere
                         ? TensorField::kExactEverywhere
                         : std::min(f.validity(), g.validity()) - 1);
    auto mom_of = [&](const FiberKey& k) {
        return k.mom.empty() ? std::vector<int>(f.n(), 0) : k.mom;
    };
    for (const auto& [kf, cf] : f.coeffs())
        for (const auto& [kg, cg] : g.coeffs())
            for (int i = 0; i < f.n(); ++i) {
                std::vector<int> mf = mom_of(kf.first), mg = mom_of(kg.first);
                // df/dp_i dg/dx_i
                if (mf[i] > 0 && kg.second[i] > 0) {
                    std::vector<int> mom = mf, e = kf.second;
                    mom[i] -= 1;
                    for (int t = 0; t < f.n(); ++t) {
                        mom[t] += mg[t];
                        e[t] += kg.second[t];
                    }
                    e[i] -= 1;
                    out.add(FiberKey{0, mom, -1}, e, cf * cg * mf[i] * kg.second[i]);
                }
                // - df/dx_i dg/dp_i
                if (kf.second[i] > 0 && mg[i] > 0) {
                    std::vector<int> mom = mf, e = kf.second;
                    for (int t = 0; t < f.n(); ++t) {
                        mom[t] += mg[t];
                        e[t] += kg.second[t];
                    }
                    mom[i] -= 1;
                    e[i] -= 1;
                    out.add(FiberKey{0, mom, -1}, e, -cf * cg * kf.second[i] * mg[i]);
                }
            }
    return out;
}

namespace {

TensorField lie_form_like(const VectorFieldPoly& xi, const TensorField& s) {
    // Untwisted Cartan formula d(i_xi s) + i_xi(d s), per vector slot for
    // vv-forms; the twist term is added by the caller.
    if (s.kind() == Kind::Form) {
        if (s.degree() == 0) {
            TensorField out = TensorField::zero_like(s);
            for (const auto& [k, c] : s.coeffs())
                for (int b = 0; b < s.n(); ++b) {
                    if (k.second[b] == 0) continue;
                    std::vector<int> e = k.second;
                    e[b] -= 1;
                    for (const auto& [e2, c2] : xi.comp[b]) {
                        std::vector<int> ee = e;
                        for (int t = 0; t < s.n(); ++t) ee[t] += e2[t];
                        out.add(k.first, ee, c * k.second[b] * c2);
                    }
                }
            return out;
        }
        TensorField out = ext_d(contract(xi, s));
        out.add_scaled(contract(xi, ext_d(s)), 1);
        return out;
    }
    throw SignatureError("internal: lie_form_like expects a form");
}

}  // namespace

TensorField lie_derivative(const VectorFieldPoly& xi, const TensorField& s) {
    if (xi.n != s.n()) throw SignatureError("lie_derivative: dimension mismatch");
    TensorField out = TensorField::zero_like(s);
    int dxi = std::max(xi.degree(), 1);
    if (s.validity() != TensorField::kExactEverywhere)
        out.set_validity(s.validity() - dxi + 1);

    auto add_base_transport = [&](TensorField& acc) {
        for (const auto& [k, c] : s.coeffs())
            for (int b = 0; b < s.n(); ++b) {
                if (k.second[b] == 0) continue;
                std::vector<int> e = k.second;
                e[b] -= 1;
                for (const auto& [e2, c2] : xi.comp[b]) {
                    std::vector<int> ee = e;
                    for (int t = 0; t < s.n(); ++t) ee[t] += e2[t];
                    acc.add(k.first, ee, c * k.second[b] * c2);
                }
            }
    };

    switch (s.kind()) {
        case Kind::Scalar: {
            add_base_transport(out);
            break;
        }
        case Kind::Form: {
            TensorField shape = s;
            TensorField lf = lie_form_like(xi, shape);
            for (const auto& [k, c] : lf.coeffs()) out.add(k.first, k.second, c);
            break;
        }
        case Kind::Polyvector: {
            add_base_transport(out);
            // fiber: xv_k -> -sum_j (d xi_j / d x_k) xv_j
            for (const auto& [k, c] : s.coeffs())
                for (int kk = 0; kk < s.n(); ++kk) {
                    unsigned m1;
                    int s1;
                    if (!odd_del(k.first.mask, kk, m1, s1)) continue;
                    for (int j = 0; j < s.n(); ++j) {
                        unsigned m2;
                        int s2;
                        if (!odd_mul(m1, j, m2, s2)) continue;
                        Poly dxi_j = poly_derivative(xi.comp[j], kk);
                        for (const auto& [e2, c2] : dxi_j) {
                            std::vector<int> e = k.second;
                            for (int t = 0; t < s.n(); ++t) e[t] += e2[t];
                            out.add(FiberKey{m2, {}, -1}, e, -c * c2 * s1 * s2);
                        }
                    }
                }
            break;
        }
        case Kind::Symtensor: {
            add_base_transport(out);
            for (const auto& [k, c] : s.coeffs()) {
                std::vector<int> mom =
                    k.first.mom.empty() ? std::vector<int>(s.n(), 0) : k.first.mom;
                for (int kk = 0; kk < s.n(); ++kk) {
                    if (mom[kk] == 0) continue;
                    for (int j = 0; j < s.n(); ++j) {
                        Poly dxi_j = poly_derivative(xi.comp[j], kk);
                        for (const auto& [e2, c2] : dxi_j) {
                            std::vector<int> m = mom, e = k.second;
                            m[kk] -= 1;
                            m[j] += 1;
                            for (int t = 0; t < s.n(); ++t) e[t] += e2[t];
                            out.add(FiberKey{0, m, -1}, e, -c * c2 * mom[kk]);
                        }
                    }
                }
            }
            break;
        }
        case Kind::VVForm: {
            // form part via Cartan per vector slot
            for (int slot = 0; slot < s.n(); ++slot) {
                TensorField part(Kind::Form, s.degree(), s.n(), 0);
                for (const auto& [k, c] : s.coeffs())
                    if (k.first.vec == slot) part.add(FiberKey{k.first.mask, {}, -1}, k.second, c);
                if (part.is_zero()) continue;
                TensorField lf = lie_form_like(xi, part);
                for (const auto& [k, c] : lf.coeffs())
                    out.add(FiberKey{k.first.mask, {}, slot}, k.second, c);
                // vector part: [xi, d_slot] = -sum_j (d xi_j/d x_slot) d_j
                for (const auto& [k, c] : part.coeffs())
                    for (int j = 0; j < s.n(); ++j) {
                        Poly dxi_j = poly_derivative(xi.comp[j], slot);
                        for (const auto& [e2, c2] : dxi_j) {
                            std::vector<int> e = k.second;
                            for (int t = 0; t < s.n(); ++t) e[t] += e2[t];
                            out.add(FiberKey{k.first.mask, {}, j}, e, -c * c2);
                        }
                    }
            }
            break;
        }
    }
    if (s.twist() != 0) {
        Poly div = xi.divergence();
        for (const auto& [k, c] : s.coeffs())
            for (const auto& [e2, c2] : div) {
                std::vector<int> e = k.second;
                for (int t = 0; t < s.n(); ++t) e[t] += e2[t];
                out.add(k.first, e, c * c2 * s.twist());
            }
    }
    return out;
}

TensorField lie_derivative(const FieldMonomial& xi, const TensorField& s) {
    return lie_derivative(VectorFieldPoly::from_monomial(xi), s);
}

TensorField top_form_to_scalar(const TensorField& s) {
    if (s.kind() != Kind::Form || s.degree() != s.n())
        throw SignatureError("top_form_to_scalar expects an n-form");
    TensorField out(Kind::Scalar, 0, s.n(), s.twist() + 1);
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs()) out.add(FiberKey{}, k.second, c);
    return out;
}

TensorField scalar_to_top_form(const TensorField& s) {
    if (s.kind() != Kind::Scalar) throw SignatureError("scalar_to_top_form expects a scalar");
    TensorField out(Kind::Form, s.n(), s.n(), s.twist() - 1);
    out.set_validity(s.validity());
    unsigned full = (1u << s.n()) - 1u;
    for (const auto& [k, c] : s.coeffs()) out.add(FiberKey{full, {}, -1}, k.second, c);
    return out;
}

TensorField form_to_polyvector_rep(const TensorField& s) {
    if (s.kind() != Kind::Form) throw SignatureError("expects a form");
    unsigned full = (1u << s.n()) - 1u;
    TensorField out(Kind::Polyvector, s.n() - s.degree(), s.n(), s.twist() + 1);
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs()) {
        unsigned comp = full & ~k.first.mask;
        // sign fixed by contract_polyvector(xv_comp, vol) = sign * dx_mask
        unsigned fmask = full;
        int sign = 1;
        for (int b = 0; b < s.n(); ++b) {
            if (!(comp & (1u << b))) continue;
            unsigned nm = 0;
            int sg = 1;
            if (!odd_del(fmask, b, nm, sg)) throw ConfigError("internal: bad complement mask");
            fmask = nm;
            sign *= sg;
        }
        out.add(FiberKey{comp, {}, -1}, k.second, c * sign);
    }
    return out;
}

TensorField polyvector_to_form_rep(const TensorField& s) {
    if (s.kind() != Kind::Polyvector) throw SignatureError("expects a polyvector");
    unsigned full = (1u << s.n()) - 1u;
    TensorField out(Kind::Form, s.n() - s.degree(), s.n(), s.twist() - 1);
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs()) {
        unsigned comp = full & ~k.first.mask;
        unsigned fmask = full;
        int sign = 1;
        for (int b = 0; b < s.n(); ++b) {
            if (!(k.first.mask & (1u << b))) continue;
            unsigned nm = 0;
            int sg = 1;
            if (!odd_del(fmask, b, nm, sg)) throw ConfigError("internal: bad complement mask");
            fmask = nm;
            sign *= sg;
        }
        out.add(FiberKey{comp, {}, -1}, k.second, c * sign);
    }
    return out;
}

TensorField vvform_trace(const TensorField& s) {
    if (s.kind() != Kind::VVForm) throw SignatureError("vvform_trace expects a vvform");
    if (s.degree() < 1) throw SignatureError("vvform_trace needs form degree >= 1");
    TensorField out(Kind::Form, s.degree() - 1, s.n(), s.twist());
    out.set_validity(s.validity());
    for (const auto& [k, c] : s.coeffs()) {
        unsigned nm;
        int sg;
        if (!odd_del(k.first.mask, k.first.vec, nm, sg)) continue;
        out.add(FiberKey{nm, {}, -1}, k.second, c * sg);
    }
    return out;
}

TensorField vvform_traceless(const TensorField& s) {
    if (s.kind() != Kind::VVForm) throw SignatureError("expects a vvform");
    int k = s.degree();
    if (s.n() - k + 1 == 0)
        throw SignatureError("traceless projection undefined at form degree n+1");
    if (k == 0) return s;
    TensorField tr = vvform_trace(s);
    // embed eta as sum_i dx_i ^ eta ( d_i
    TensorField emb(Kind::VVForm, k, s.n(), s.twist());
    for (const auto& [kk, c] : tr.coeffs())
        for (int i = 0; i < s.n(); ++i) {
            unsigned nm;
            int sg;
            if (!odd_mul(kk.first.mask, i, nm, sg)) continue;
            emb.add(FiberKey{nm, {}, i}, kk.second, c * sg);
        }
    return s + emb * rat(-1, s.n() - k + 1);
}

VectorFieldPoly as_vector_field(const TensorField& s) {
    VectorFieldPoly out;
    out.n = s.n();
    out.comp.resize(s.n());
    if (s.kind() == Kind::Polyvector && s.degree() == 1) {
        for (const auto& [k, c] : s.coeffs())
            for (int b = 0; b < s.n(); ++b)
                if (k.first.mask == (1u << b))
                    out.comp[b] = poly_add(out.comp[b], poly_monomial(k.second, c));
        return out;
    }
    if (s.kind() == Kind::VVForm && s.degree() == 0) {
        for (const auto& [k, c] : s.coeffs())
            out.comp[k.first.vec] = poly_add(out.comp[k.first.vec], poly_monomial(k.second, c));
        return out;
    }
    throw SignatureError("not a vector field: " + kind_str(s.kind(), s.degree()));
}

TensorField vector_field_to_polyvector(const VectorFieldPoly& xi, const Rational& twist) {
    TensorField out(Kind::Polyvector, 1, xi.n, twist);
    for (int b = 0; b < xi.n; ++b)
        for (const auto& [e, c] : xi.comp[b]) out.add(FiberKey{1u << b, {}, -1}, e, c);
    return out;
}

}  // namespace bilops
