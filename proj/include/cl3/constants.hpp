#ifndef CL3_CONSTANTS_HPP
#define CL3_CONSTANTS_HPP

// Limiting constants for 3-torsion averages and counts of quartic
// 2-extensions of Q, as truncated sums over quadratic fields F with an
// explicit tail bracket.

#include <cstdint>
#include <string>
#include <vector>

#include "cl3/arith.hpp"
#include "cl3/certified.hpp"
#include "cl3/quadfield.hpp"
#include "cl3/wreath.hpp"

namespace cl3 {

/// G-type: Res zeta_F / (zeta_F(2) D^2). M-type carries an extra 2^{-r2(F)}.
enum class WeightVariant { GType, MType };

CertifiedReal weight(const QuadFieldData& F, WeightVariant variant = WeightVariant::GType);

enum class ConstantTarget { Cm, CD4Sigma, CD4, Dm, DD4Sigma, DD4 };

std::string to_string(ConstantTarget t);
/// Accepts "C_m", "C_D4_sigma", "C_D4", "D_m", "D_D4_sigma", "D_D4".
ConstantTarget parse_target(const std::string& name);

struct ConstantEstimate {
    ConstantTarget target = ConstantTarget::CD4;
    std::string signature;  // cycle notation for the Sigma targets, else empty
    double lower = 0.0;
    double upper = 0.0;
    /// Quotient of the truncated sums at their midpoints, without tails.
    double point = 0.0;
    u64 truncation = 0;
    double tail_bound = 0.0;
    /// Set when the bracket is wider than 0.02.
    bool flagged = false;
};

/// Bounds on the sums over fundamental |d| > X of weight * h and of weight,
/// for one sign of d. Requires X >= 100.
struct TailBounds {
    double numerator = 0.0;
    double denominator = 0.0;
};
TailBounds tail_bounds(u64 X, int sign);

/// Bound on sum_{|d| > X} weight(F) h3(F) times the largest archimedean factor (2).
double tail_bound(u64 X);

/// One quadratic field's contribution: certified G-type weight and exact h3.
struct FieldTerm {
    i64 d = 0;
    i64 h3 = 1;
    double w_lo = 0.0;
    double w_hi = 0.0;
    double w_mid = 0.0;
};

/// Weights and h3 for every fundamental |d| <= bound, ordered by |d|, so one
/// table serves every target and every truncation up to its bound.
class WeightTable {
public:
    static WeightTable build(u64 bound, int jobs = 1);

    u64 bound() const { return bound_; }
    const std::vector<FieldTerm>& terms() const { return terms_; }

private:
    u64 bound_ = 0;
    std::vector<FieldTerm> terms_;
};

/// sigma is a class of D4 = <(1234),(24)> in cycle notation; it is required
/// for the Sigma targets and ignored otherwise.
ConstantEstimate eval_constant(ConstantTarget target, const WeightTable& table, u64 truncation,
                               const std::string& sigma = "");
ConstantEstimate eval_constant(ConstantTarget target, u64 truncation, const std::string& sigma = "",
                               int jobs = 1);

/// The four D4 signatures in table order.
std::vector<std::string> d4_signatures();

}  // namespace cl3

#endif
