#ifndef BILOPS_SOLVER_HPP
#define BILOPS_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "bilops/jet.hpp"
#include "bilops/linalg.hpp"
#include "bilops/locus.hpp"

namespace bilops {

enum class GeneratorSet { Minimal, Full };
enum class NuPolicy { All, Balanced };

/// The constraint fields whose joint annihilation (plus highest-weight
/// conditions for n >= 2) characterizes singular vectors.
/// Minimal sets: n=1 {x^2 d, x^3 d}; n=2 {x1 d2, x2^2 d1, x2^2 d2}.
/// Full: all xi dj (i<j), all xi xj dk, and x^3 d for n=1.
std::vector<FieldMonomial> constraint_fields(int n, GeneratorSet gen);

struct SingularSystem {
    int n = 1;
    int d = 0;
    Weight nu;
    std::vector<FieldMonomial> fields;
    std::vector<JetKey> columns;
    SparseMat matrix;  // rows: constraint components, cols: jet basis keys
};

SingularSystem assemble_system(const IrredFiber& f1, const IrredFiber& f2, int d,
                               const Weight& nu, GeneratorSet gen = GeneratorSet::Full);

/// Kernel of the assembled system as normalized jet vectors.
std::vector<JetVector> singular_vectors(const IrredFiber& f1, const IrredFiber& f2, int d,
                                        const Weight& nu,
                                        GeneratorSet gen = GeneratorSet::Full);

/// Admissible target weights of the degree-d component.  Balanced restricts
/// to nu = top1+top2 - (s, d-s) for s = 0..d (n=2) / the unique nu (n=1);
/// All enumerates every weight realized by the key basis.
std::vector<Weight> admissible_nu(const IrredFiber& f1, const IrredFiber& f2, int d,
                                  NuPolicy policy);

/// Default fiber truncation for a degree-d request: s_max + d + 2.
int default_truncation(int d);

struct ScanEntry {
    Weight nu;
    int kernel_dim = 0;
    std::vector<JetVector> basis;  // only kept when kernel_dim > 0
};

struct ScanPoint {
    Weight w1, w2;
    std::vector<ScanEntry> entries;
    std::string error;  // empty when the point was solved
};

struct ScanReport {
    int n = 1;
    int d = 0;
    NuPolicy policy = NuPolicy::Balanced;
    GeneratorSet gen = GeneratorSet::Minimal;
    std::vector<ScanPoint> points;
};

/// Solve every grid point independently (parallelism threads); per-point
/// errors are recorded in the report, and the report order follows the grid.
ScanReport scan(int n, int d, const std::vector<std::pair<Weight, Weight>>& grid,
                NuPolicy policy, GeneratorSet gen, int truncation_override = -1,
                int parallelism = 1);

/// Parametric n=1 system matrix over Q[l,m]: rows of the x^2 d and x^3 d
/// constraints on coefficients c_0..c_d of f = sum c_i/(i!j!) d^i v ( d^j w.
std::vector<std::vector<ParamPoly>> n1_parametric_matrix(int d);

struct N1Locus {
    int d = 0;
    LocusDescription locus;
    // Kernel certificate at each isolated point, in point order.
    std::vector<std::vector<JetVector>> point_kernels;
};

/// Exact description of {(l,m) : kernel != 0} for 1 <= d <= 6, from the full
/// condition matrix (necessary and sufficient), with kernel certificates.
N1Locus n1_parametric_locus(int d);

/// The order-d tridiagonal determinant Delta_i with j = d-i:
///   (2l-i)(2l-i+1)(3m-j+1) + (2m-j)(2m-j+1)(3l-i+1),  1 <= i <= d-1.
Rational delta(int i, int d, const Rational& l, const Rational& m);

}  // namespace bilops

#endif
