#pragma once

// Floating-point side: logistic and tent maps at extended precision, the
// D_n interval recursion, kneading extraction, parameter bisection, the
// projection of odometer points and Lyapunov averages.

#include "postcrit/kneading.hpp"
#include "postcrit/odometer.hpp"
#include "postcrit/real.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pcs {

enum class Family { Logistic, Tent };

Family parse_family(const std::string& name);
const char* to_string(Family f);

class UnimodalMap {
public:
    UnimodalMap(Family family, Real param);
    static UnimodalMap logistic(const std::string& lambda, unsigned prec = 256);
    static UnimodalMap tent(const std::string& slope, unsigned prec = 256);

    Family family() const { return family_; }
    const Real& param() const { return param_; }
    unsigned prec() const { return param_.prec(); }
    const Real& critical() const { return c_; }

    Real operator()(const Real& x) const;
    // ln|f'(x)|, -inf at the critical point.
    double log_abs_derivative(const Real& x) const;

    // f(0) = f(1) = 0 and monotone branches on a grid. Throws DomainError.
    void check_shape() const;
    // f^2(c) < c < f(c). Throws DomainError.
    void check_kneading_precondition() const;

private:
    Family family_;
    Real param_;
    Real c_, one_;
};

struct DnOptions {
    long tol_exp = -64;              // fragile below 2^tol_exp
    std::uint64_t fragile_budget = 64;
    bool strict = false;             // orbits landing on a fixed point are errors
    std::uint64_t max_iter = 1u << 22;
};

struct DnStep {
    std::uint64_t n, other;  // D_n = hull(c_n, c_other)
    bool cut, fragile;
};

struct DnSequence {
    std::vector<Real> orbit;       // c_0 .. c_N
    std::vector<DnStep> steps;     // steps[n-1] describes D_n
    std::vector<std::uint64_t> cutting;
    std::uint64_t fragile_count = 0;
    bool degenerate = false;       // the critical orbit reached a fixed point
    std::uint64_t degenerate_at = 0;

    std::pair<Real, Real> interval(std::uint64_t n) const;
};

DnSequence d_intervals(const UnimodalMap& f, std::uint64_t N, const DnOptions& opt = {});

struct ExtractedKneading {
    std::vector<std::uint64_t> Q;  // Q(0..K)
    std::vector<std::uint64_t> S;  // S_0..S_K
    std::uint64_t fragile_count = 0;
    bool degenerate = false;
    std::uint64_t degenerate_at = 0;
    AdmissibilityReport admissible;
};

ExtractedKneading kneading_from_map(const UnimodalMap& f, std::uint64_t K, const DnOptions& opt = {});

// Itinerary of c_1 .. c_N: 0 left of c, 1 right of c, 2 on c (and stop).
std::vector<std::uint8_t> itinerary(const UnimodalMap& f, std::uint64_t N);
// Itinerary of c_1 .. c_{S_K} forced by Q(0..K).
std::vector<std::uint8_t> kneading_sequence(const std::vector<std::uint64_t>& Q);
// Order in which the itinerary of c_1 grows with the parameter: at the first
// difference, 0 < 2 < 1 after an even number of 1s, reversed after an odd one.
int compare_itineraries(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

struct SearchOptions {
    unsigned prec = 256;
    long width_exp = 0;        // give up below 2^width_exp; 0 means 4 bits above the precision
    std::uint64_t max_steps = 1000;
    DnOptions dn;
};

struct ParameterResult {
    Real param;
    Real lo, hi;
    std::uint64_t steps = 0;
    ExtractedKneading check;
};

// Bisection for a parameter whose kneading map starts with Q(0..K).
ParameterResult find_parameter(Family family, const std::vector<std::uint64_t>& Q, const SearchOptions& opt = {});

struct ProjectionStep {
    std::uint64_t n;
    BigInt sigma;
    Real lo, hi;
};

struct Projection {
    bool point = false;  // finite support: the orbit point itself
    Real lo, hi;
    std::vector<ProjectionStep> steps;
};

// Nested intervals D_{sigma(x|n)}; PrecisionError when they stop nesting.
Projection project_point(const UnimodalMap& f, const OdometerPoint& x, const DnOptions& opt = {});

struct LyapunovResult {
    double average = 0;
    bool hit_critical = false;
    std::vector<std::pair<std::uint64_t, double>> trace;  // (n, running average) at each power of 10
};

LyapunovResult lyapunov(const UnimodalMap& f, const Real& x0, std::uint64_t n);

}  // namespace pcs
