#include "cl3/certified.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>

#include "cl3/error.hpp"

namespace cl3 {

namespace {

// Radius arithmetic is itself rounded; inflate so it stays an upper bound.
double up(double r) { return r * (1.0 + 4.0 * DBL_EPSILON) + DBL_TRUE_MIN; }

}  // namespace

double rounding_slack(double v, int ulps) {
    return ulps * (std::fabs(v) * DBL_EPSILON + DBL_TRUE_MIN);
}

CertifiedReal::CertifiedReal(double mid, double rad) : mid_(mid), rad_(rad) {
    if (!(rad >= 0.0)) fail(ErrorCode::InvalidArgument, "CertifiedReal: negative or NaN radius");
}

CertifiedReal CertifiedReal::from_int(long long v) {
    double m = static_cast<double>(v);
    double err = std::fabs(static_cast<long double>(v) - static_cast<long double>(m));
    return {m, err == 0.0 ? 0.0 : up(err)};
}

CertifiedReal CertifiedReal::from_bounds(double lower, double upper) {
    if (lower > upper) fail(ErrorCode::InvalidArgument, "CertifiedReal: lower > upper");
    double m = 0.5 * lower + 0.5 * upper;
    double r = std::fmax(m - lower, upper - m);
    return {m, up(r) + rounding_slack(m)};
}

CertifiedReal CertifiedReal::pi() {
    // M_PI is the double nearest to pi; the gap is below one ulp.
    return {M_PI, rounding_slack(M_PI)};
}

double CertifiedReal::lower() const {
    return std::nextafter(mid_ - rad_, -INFINITY);
}

double CertifiedReal::upper() const {
    return std::nextafter(mid_ + rad_, INFINITY);
}

CertifiedReal CertifiedReal::widened(double extra) const {
    if (!(extra >= 0.0)) fail(ErrorCode::InvalidArgument, "widened: negative extra");
    return {mid_, up(rad_ + extra)};
}

CertifiedReal CertifiedReal::hull(const CertifiedReal& o) const {
    return from_bounds(std::fmin(lower(), o.lower()), std::fmax(upper(), o.upper()));
}

CertifiedReal& CertifiedReal::operator+=(const CertifiedReal& o) {
    double m = mid_ + o.mid_;
    rad_ = up(rad_ + o.rad_) + rounding_slack(m);
    mid_ = m;
    return *this;
}

CertifiedReal& CertifiedReal::operator-=(const CertifiedReal& o) {
    return *this += -o;
}

CertifiedReal& CertifiedReal::operator*=(const CertifiedReal& o) {
    double m = mid_ * o.mid_;
    double r = std::fabs(mid_) * o.rad_ + std::fabs(o.mid_) * rad_ + rad_ * o.rad_;
    rad_ = up(r) + rounding_slack(m);
    mid_ = m;
    return *this;
}

CertifiedReal& CertifiedReal::operator/=(const CertifiedReal& o) {
    double denom = std::fabs(o.mid_) - o.rad_;
    if (!(denom > 0.0)) fail(ErrorCode::PrecisionFailure, "CertifiedReal: division by a ball containing zero");
    double m = mid_ / o.mid_;
    // |x/y - m| <= (|x - mid_| + |m| |y - o.mid_|) / |y|
    double r = (rad_ + std::fabs(m) * o.rad_) / denom;
    rad_ = up(r) + rounding_slack(m);
    mid_ = m;
    return *this;
}

std::string CertifiedReal::to_string(int digits) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g +/- %.3g", digits, mid_, rad_);
    return buf;
}

CertifiedReal operator+(CertifiedReal a, const CertifiedReal& b) { return a += b; }
CertifiedReal operator-(CertifiedReal a, const CertifiedReal& b) { return a -= b; }
CertifiedReal operator*(CertifiedReal a, const CertifiedReal& b) { return a *= b; }
CertifiedReal operator/(CertifiedReal a, const CertifiedReal& b) { return a /= b; }

CertifiedReal sqrt(const CertifiedReal& x) {
    double lo = x.mid() - x.rad();
    if (lo < 0.0) fail(ErrorCode::PrecisionFailure, "sqrt of a ball reaching below zero");
    double m = std::sqrt(x.mid());
    // |sqrt(y) - sqrt(mid)| = |y - mid| / (sqrt(y) + sqrt(mid))
    double denom = std::sqrt(lo) + m;
    double r = denom > 0.0 ? x.rad() / denom : std::sqrt(x.rad());
    return {m, up(r) + rounding_slack(m, 2)};
}

CertifiedReal log(const CertifiedReal& x) {
    double lo = x.mid() - x.rad();
    if (!(lo > 0.0)) fail(ErrorCode::PrecisionFailure, "log of a ball reaching zero");
    double m = std::log(x.mid());
    return {m, up(x.rad() / lo) + rounding_slack(m, 4)};
}

CertifiedReal exp(const CertifiedReal& x) {
    double m = std::exp(x.mid());
    double r = std::exp(x.mid() + x.rad()) * std::expm1(x.rad());
    return {m, up(r) + rounding_slack(m, 4)};
}

CertifiedReal pow(const CertifiedReal& x, int n) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "pow: negative exponent");
    CertifiedReal result = CertifiedReal::exact(1.0);
    CertifiedReal base = x;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

}  // namespace cl3
