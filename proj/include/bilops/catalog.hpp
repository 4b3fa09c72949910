#ifndef BILOPS_CATALOG_HPP
#define BILOPS_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "bilops/tensor.hpp"

namespace bilops {

enum class OpTag {
    Z,
    Z1,
    Z2,
    P1,
    P1s1,
    P2,
    P2s1,
    P3,
    P4,
    N,
    P5,
    P6,
    P7,
    P8,
    S1,
    S1s,
    S2,
    S2s,
    T1,
    T1s,
    T2,
    HessianPairing,
};

/// A catalog operator: the tag plus the scalar parameters of the P5 family.
struct OpId {
    OpTag tag = OpTag::Z;
    Rational a = 1;
    Rational b = 1;
};

std::string op_name(OpTag tag);
OpTag op_tag_from_name(const std::string& name);

/// Apply the operator; throws SignatureError naming the expected signature
/// when the inputs do not match.
TensorField apply(const OpId& op, const TensorField& s1, const TensorField& s2);

/// Shape of a test input.
struct FieldShape {
    Kind kind = Kind::Scalar;
    int degree = 0;
    Rational twist = 0;
};

struct OpInstance {
    FieldShape in1, in2;
};

/// Registry metadata: classical name, differential order, human-readable
/// signature and formula, whether the operator is expected to be
/// diffeomorphism-invariant (the Hessian pairing is the deliberate
/// divergence-free-only control).
struct OpInfo {
    OpTag tag;
    std::string name;
    int order = 0;
    std::string signature;
    std::string formula;
    bool invariant = true;
    int min_n = 1;
    int max_n = 0;  // 0 = no bound
};

const std::vector<OpInfo>& catalog_registry();
const OpInfo& op_info(OpTag tag);

/// Concrete instances on which the operator is exercised at dimension n
/// (empty when the operator is not defined there).
std::vector<OpInstance> default_instances(OpTag tag, int n);

}  // namespace bilops

#endif
