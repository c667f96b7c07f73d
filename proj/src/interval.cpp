#include "postcrit/interval.hpp"

#include "postcrit/errors.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace pcs {

Family parse_family(const std::string& name)
{
    if (name == "logistic")
        return Family::Logistic;
    if (name == "tent")
        return Family::Tent;
    throw ParseError("unknown family '" + name + "' (logistic, tent)");
}

const char* to_string(Family f) { return f == Family::Logistic ? "logistic" : "tent"; }

UnimodalMap::UnimodalMap(Family family, Real param)
    : family_(family), param_(std::move(param)), c_(Real::from_rational(Rational(1, 2), param_.prec())),
      one_(Real::from_int(1, param_.prec()))
{
    Real zero(prec());
    Real top = Real::from_int(family_ == Family::Logistic ? 4 : 2, prec());
    if (param_ <= zero || param_ > top)
        throw DomainError(std::string(to_string(family_)) + " parameter out of range: " + param_.decimal());
}

UnimodalMap UnimodalMap::logistic(const std::string& lambda, unsigned prec)
{
    return UnimodalMap(Family::Logistic, Real::parse(lambda, prec));
}

UnimodalMap UnimodalMap::tent(const std::string& slope, unsigned prec)
{
    return UnimodalMap(Family::Tent, Real::parse(slope, prec));
}

Real UnimodalMap::operator()(const Real& x) const
{
    Real r(prec());
    if (family_ == Family::Logistic) {
        Real t(prec());
        mpfr_ui_sub(t.get(), 1, x.get(), MPFR_RNDN);
        mpfr_mul(r.get(), x.get(), t.get(), MPFR_RNDN);
        mpfr_mul(r.get(), r.get(), param_.get(), MPFR_RNDN);
    } else {
        Real t(prec());
        mpfr_ui_sub(t.get(), 1, x.get(), MPFR_RNDN);
        mpfr_min(t.get(), t.get(), x.get(), MPFR_RNDN);
        mpfr_mul(r.get(), t.get(), param_.get(), MPFR_RNDN);
    }
    return r;
}

double UnimodalMap::log_abs_derivative(const Real& x) const
{
    if (x == c_)
        return -std::numeric_limits<double>::infinity();
    if (family_ == Family::Tent)
        return std::log(param_.to_double());
    Real t(prec());
    mpfr_mul_2ui(t.get(), x.get(), 1, MPFR_RNDN);
    mpfr_ui_sub(t.get(), 1, t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), param_.get(), MPFR_RNDN);
    return std::log(std::fabs(t.to_double()));
}

void UnimodalMap::check_shape() const
{
    Real zero(prec());
    if (!(*this)(zero).is_zero() || !(*this)(one_).is_zero())
        throw DomainError("f(0) and f(1) must vanish");
    const int grid = 64;
    Real prev = zero, fprev = (*this)(zero);
    for (int i = 1; i <= grid; ++i) {
        Real x = Real::from_rational(Rational(i, grid), prec());
        Real fx = (*this)(x);
        bool left = x <= c_;
        if ((left && fx < fprev) || (!left && prev >= c_ && fx > fprev))
            throw DomainError("map is not unimodal on the check grid");
        prev = x;
        fprev = fx;
    }
}

void UnimodalMap::check_kneading_precondition() const
{
    Real c1 = (*this)(c_);
    Real c2 = (*this)(c1);
    if (!(c2 < c_ && c_ < c1))
        throw DomainError("kneading needs f^2(c) < c < f(c); got f(c) = " + c1.decimal() + ", f^2(c) = "
                          + c2.decimal());
}

namespace {

// Walks D_1, D_2, ... keeping only the two endpoints.
struct Walker {
    const UnimodalMap& f;
    const DnOptions& opt;
    Real c, c1, cn, cm, tol;
    std::uint64_t n = 1, m = 0;
    bool degenerate = false;
    std::uint64_t degenerate_at = 0;
    std::uint64_t fragile_count = 0;

    Walker(const UnimodalMap& map, const DnOptions& o)
        : f(map), opt(o), c(map.critical()), c1(map(map.critical())), cn(c1), cm(map.critical()),
          tol(exp2_int(o.tol_exp, map.prec()))
    {
    }

    // Verdict for the current D_n, then move on to D_{n+1}.
    DnStep step()
    {
        DnStep s{n, m, true, false};
        if (n > 1) {
            Real dn = cn - c, dm = cm - c;
            if (dn.is_zero())
                throw DomainError("the critical point is periodic (c_" + std::to_string(n) + " = c)");
            s.cut = dn.sign() * dm.sign() <= 0;
            s.fragile = dn.abs() < tol || dm.abs() < tol;
            if (s.fragile && ++fragile_count > opt.fragile_budget)
                throw PrecisionError("more than " + std::to_string(opt.fragile_budget)
                                     + " fragile verdicts; raise the precision");
        }
        Real next = f(cn);
        if (!degenerate && next == cn) {
            degenerate = true;
            degenerate_at = n;
            if (opt.strict)
                throw DomainError("the critical orbit lands on a fixed point at c_" + std::to_string(n));
        }
        if (s.cut) {
            cm = c1;
            m = 1;
        } else {
            cm = f(cm);
            ++m;
        }
        cn = std::move(next);
        ++n;
        return s;
    }
};

}  // namespace

std::pair<Real, Real> DnSequence::interval(std::uint64_t n) const
{
    if (n < 1 || n > steps.size())
        throw HorizonError("D_" + std::to_string(n) + " was not computed");
    const DnStep& s = steps[n - 1];
    const Real &a = orbit[s.n], &b = orbit[s.other];
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

DnSequence d_intervals(const UnimodalMap& f, std::uint64_t N, const DnOptions& opt)
{
    if (N < 1)
        throw DomainError("N must be at least 1");
    f.check_kneading_precondition();
    DnSequence out;
    out.orbit.push_back(f.critical());
    for (std::uint64_t i = 1; i <= N; ++i)
        out.orbit.push_back(f(out.orbit.back()));
    Walker w(f, opt);
    for (std::uint64_t i = 1; i <= N; ++i) {
        DnStep s = w.step();
        out.steps.push_back(s);
        if (s.cut)
            out.cutting.push_back(s.n);
    }
    out.fragile_count = w.fragile_count;
    out.degenerate = w.degenerate;
    out.degenerate_at = w.degenerate_at;
    return out;
}

ExtractedKneading kneading_from_map(const UnimodalMap& f, std::uint64_t K, const DnOptions& opt)
{
    f.check_kneading_precondition();
    ExtractedKneading out;
    std::unordered_map<std::uint64_t, std::uint64_t> index;  // S_k -> k
    Walker w(f, opt);
    while (out.S.size() < K + 1) {
        if (w.n > opt.max_iter)
            throw HorizonError("found only " + std::to_string(out.S.size()) + " cutting times in "
                               + std::to_string(opt.max_iter) + " iterations");
        DnStep s = w.step();
        if (!s.cut)
            continue;
        std::uint64_t k = out.S.size();
        if (k == 0) {
            out.Q.push_back(0);
        } else {
            auto it = index.find(s.n - out.S.back());
            if (it == index.end())
                throw InconsistencyError("S_" + std::to_string(k) + " - S_" + std::to_string(k - 1) + " = "
                                         + std::to_string(s.n - out.S.back()) + " is not a cutting time");
            out.Q.push_back(it->second);
        }
        index[s.n] = k;
        out.S.push_back(s.n);
    }
    out.fragile_count = w.fragile_count;
    out.degenerate = w.degenerate;
    out.degenerate_at = w.degenerate_at;
    out.admissible = is_admissible(KneadingMap::table(out.Q), K);
    return out;
}

std::vector<std::uint8_t> itinerary(const UnimodalMap& f, std::uint64_t N)
{
    std::vector<std::uint8_t> out;
    out.reserve(N);
    const Real& c = f.critical();
    Real x = f(c);
    for (std::uint64_t i = 1; i <= N; ++i) {
        if (x == c) {
            out.push_back(2);
            break;
        }
        out.push_back(x > c ? 1 : 0);
        x = f(x);
    }
    return out;
}

std::vector<std::uint8_t> kneading_sequence(const std::vector<std::uint64_t>& Q)
{
    if (Q.empty() || Q[0] != 0)
        throw DomainError("kneading prefix must start with Q(0) = 0");
    std::vector<std::uint64_t> S{1};
    for (std::size_t k = 1; k < Q.size(); ++k) {
        if (Q[k] >= k)
            throw DomainError("Q(k) > k - 1 at k = " + std::to_string(k));
        S.push_back(S[k - 1] + S[Q[k]]);
    }
    // nu[i] is the symbol of c_i, 1-based
    std::vector<std::uint8_t> nu(S.back() + 1, 0);
    nu[1] = 1;
    for (std::size_t k = 1; k < Q.size(); ++k) {
        std::uint64_t len = S[Q[k]];
        for (std::uint64_t i = 1; i < len; ++i)
            nu[S[k - 1] + i] = nu[i];
        nu[S[k]] = 1 - nu[len];
    }
    return {nu.begin() + 1, nu.end()};
}

int compare_itineraries(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
{
    static const int rank[3] = {0, 2, 1};
    std::size_t n = std::min(a.size(), b.size());
    bool odd = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
            int d = rank[a[i]] < rank[b[i]] ? -1 : 1;
            return odd ? -d : d;
        }
        if (a[i] == 2)
            return 0;
        odd ^= a[i] == 1;
    }
    return 0;
}

ParameterResult find_parameter(Family family, const std::vector<std::uint64_t>& Q, const SearchOptions& opt)
{
    if (Q.size() < 2)
        throw DomainError("target prefix needs at least Q(0), Q(1)");
    std::vector<std::uint8_t> target = kneading_sequence(Q);
    AdmissibilityReport adm = is_admissible(KneadingMap::table(Q), Q.size() - 1);
    if (adm.verdict == Verdict::NotAdmissible)
        throw DomainError("target is not a kneading map: " + adm.reason + " at k = " + std::to_string(adm.witness));
    std::uint64_t K = Q.size() - 1;

    unsigned p = opt.prec;
    Real lo = family == Family::Logistic ? Real::from_int(1, p) + Real::from_int(5, p).sqrt() : Real::from_int(1, p);
    Real hi = Real::from_int(family == Family::Logistic ? 4 : 2, p);
    auto cmp_at = [&](const Real& x) { return compare_itineraries(itinerary(UnimodalMap(family, x), target.size()), target); };
    if (cmp_at(lo) > 0 || cmp_at(hi) < 0)
        throw NotFoundError("target kneading data is not bracketed by the family's parameter range");

    Real width = exp2_int(opt.width_exp ? opt.width_exp : 4 - static_cast<long>(p), p);
    Real half = Real::from_rational(Rational(1, 2), p);
    for (std::uint64_t step = 1; step <= opt.max_steps; ++step) {
        Real mid = (lo + hi) * half;
        int c = cmp_at(mid);
        if (c == 0) {
            UnimodalMap f(family, mid);
            ParameterResult res{mid, lo, hi, step, kneading_from_map(f, K, opt.dn)};
            if (res.check.Q != Q)
                throw InconsistencyError("itinerary matches but the extracted kneading map does not");
            return res;
        }
        if (c < 0)
            lo = std::move(mid);
        else
            hi = std::move(mid);
        if (hi - lo < width)
            break;
    }
    throw NotFoundError("bisection narrowed below the width limit without matching the target");
}

Projection project_point(const UnimodalMap& f, const OdometerPoint& x, const DnOptions& opt)
{
    Projection out;
    const KneadingMap& Q = x.map();
    if (x.finite_support()) {
        std::uint64_t n = to_u64(x.sigma(), "orbit index");
        Real y = f.critical();
        for (std::uint64_t i = 0; i < n; ++i)
            y = f(y);
        out.point = true;
        out.lo = y;
        out.hi = y;
        return out;
    }
    auto q = x.first_one();
    if (!q)
        throw UnresolvedError("no 1 in the window; the projection is not determined");
    const auto& bits = x.bits();
    BigInt top = x.sigma(bits.size() - 1);
    std::uint64_t N = to_u64(top, "orbit index");

    // The map must realize Q on every cutting time the word can reach.
    std::uint64_t K = 0;
    while (Q.S(K) <= N)
        ++K;
    ExtractedKneading ek = kneading_from_map(f, K, opt);
    for (std::uint64_t k = 0; k <= K; ++k)
        if (ek.Q[k] != Q.at(k))
            throw DomainError("the map's kneading data differs from Q at k = " + std::to_string(k));

    DnSequence dn = d_intervals(f, N, opt);
    for (std::size_t n = *q; n < bits.size(); ++n) {
        if (!bits[n])
            continue;
        BigInt s = x.sigma(n);
        auto [a, b] = dn.interval(to_u64(s, "orbit index"));
        if (!out.steps.empty()) {
            const auto& prev = out.steps.back();
            if (a < prev.lo || b > prev.hi)
                throw PrecisionError("D_" + str(s) + " is not inside D_" + str(prev.sigma) + "; raise the precision");
        }
        out.steps.push_back({n, s, a, b});
    }
    out.lo = out.steps.back().lo;
    out.hi = out.steps.back().hi;
    return out;
}

LyapunovResult lyapunov(const UnimodalMap& f, const Real& x0, std::uint64_t n)
{
    if (n < 1)
        throw DomainError("n must be at least 1");
    Real zero(f.prec()), one = Real::from_int(1, f.prec());
    if (!(zero < x0 && x0 < one))
        throw DomainError("x0 must lie in (0, 1)");
    LyapunovResult out;
    long double sum = 0;
    Real x = x0;
    std::uint64_t next_mark = 10;
    for (std::uint64_t i = 1; i <= n; ++i) {
        double d = f.log_abs_derivative(x);
        if (std::isinf(d)) {
            out.hit_critical = true;
            out.average = -std::numeric_limits<double>::infinity();
            return out;
        }
        sum += d;
        if (i == next_mark) {
            out.trace.emplace_back(i, static_cast<double>(sum / i));
            next_mark *= 10;
        }
        x = f(x);
    }
    out.average = static_cast<double>(sum / n);
    if (out.trace.empty() || out.trace.back().first != n)
        out.trace.emplace_back(n, out.average);
    return out;
}

}  // namespace pcs
