#ifndef CL3_CERTIFIED_HPP
#define CL3_CERTIFIED_HPP

#include <string>

namespace cl3 {

/// Midpoint-radius ball over double precision. Every operation adds the
/// rounding error of the computed midpoint to the radius, so the true value
/// stays inside [mid - rad, mid + rad] whenever the inputs' true values do.
class CertifiedReal {
public:
    CertifiedReal() = default;
    CertifiedReal(double mid, double rad);

    static CertifiedReal exact(double v) { return {v, 0.0}; }
    static CertifiedReal from_int(long long v);
    static CertifiedReal from_bounds(double lower, double upper);
    static CertifiedReal pi();

    double mid() const { return mid_; }
    double rad() const { return rad_; }
    double lower() const;
    double upper() const;

    bool contains(double v) const { return lower() <= v && v <= upper(); }
    bool intersects(const CertifiedReal& o) const {
        return lower() <= o.upper() && o.lower() <= upper();
    }
    bool contains(const CertifiedReal& o) const {
        return lower() <= o.lower() && o.upper() <= upper();
    }
    bool is_positive() const { return lower() > 0.0; }

    CertifiedReal widened(double extra) const;
    /// Smallest ball containing both.
    CertifiedReal hull(const CertifiedReal& o) const;

    CertifiedReal operator-() const { return {-mid_, rad_}; }
    CertifiedReal& operator+=(const CertifiedReal& o);
    CertifiedReal& operator-=(const CertifiedReal& o);
    CertifiedReal& operator*=(const CertifiedReal& o);
    CertifiedReal& operator/=(const CertifiedReal& o);

    std::string to_string(int digits = 12) const;

private:
    double mid_ = 0.0;
    double rad_ = 0.0;
};

CertifiedReal operator+(CertifiedReal a, const CertifiedReal& b);
CertifiedReal operator-(CertifiedReal a, const CertifiedReal& b);
CertifiedReal operator*(CertifiedReal a, const CertifiedReal& b);
CertifiedReal operator/(CertifiedReal a, const CertifiedReal& b);

CertifiedReal sqrt(const CertifiedReal& x);
CertifiedReal log(const CertifiedReal& x);
CertifiedReal exp(const CertifiedReal& x);
/// x^n for integer n >= 0.
CertifiedReal pow(const CertifiedReal& x, int n);

/// Upper bound on the rounding error of a double result of magnitude |v|
/// produced by a libm call (a few ulps).
double rounding_slack(double v, int ulps = 1);

}  // namespace cl3

#endif
