#include "postcrit/odometer.hpp"

#include "postcrit/errors.hpp"

#include <stdexcept>

namespace pcs {

namespace {

constexpr std::uint64_t max_word = std::uint64_t(1) << 24;

void trim(std::vector<std::uint8_t>& b)
{
    while (!b.empty() && b.back() == 0)
        b.pop_back();
}

// Largest k with S_k <= n (n >= 1).
std::uint64_t top_index(const BigInt& n, const KneadingMap& Q)
{
    std::uint64_t hi = 1;
    while (Q.S(hi) <= n) {
        hi *= 2;
        if (hi > max_word)
            throw HorizonError("expansion of " + str(n) + " is longer than the supported word length");
    }
    std::uint64_t lo = hi / 2;  // S_lo <= n (S_0 = 1 <= n)
    if (hi == 1)
        return 0;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (Q.S(mid) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

BigInt window_sigma(const std::vector<std::uint8_t>& b, const KneadingMap& Q)
{
    BigInt s = 0;
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k])
            s += Q.S(std::uint64_t(k));
    return s;
}

// Truncated words: y replaces the window w. Every admissible tail behind w
// must stay admissible behind y, otherwise the answer depends on bits we
// do not have.
void check_tail(const std::vector<std::uint8_t>& w, const std::vector<std::uint8_t>& y, const KneadingMap& Q)
{
    if (!Q.nondecreasing() || !Q.diverging())
        throw HorizonError("truncated words need a non-decreasing diverging kneading map to bound the tail");
    std::size_t L = w.size();
    std::optional<std::size_t> top;
    for (std::size_t k = L; k-- > 0;)
        if (w[k]) {
            top = k;
            break;
        }
    // First tail position l >= L a 1 could occupy: w must vanish on [Q(l+1), L-1].
    BigInt l(std::to_string(L));
    if (top) {
        BigInt cand = Q.last_at_most(BigInt(std::to_string(*top)));
        if (cand > l)
            l = cand;
    }
    BigInt lo = Q.value(l + 1);
    if (lo >= L)
        return;
    for (std::size_t j = lo.get_ui(); j < L; ++j)
        if (j < y.size() && y[j])
            throw UnresolvedError("result depends on bits past the window (a tail bit at "
                                  + str(l) + " would conflict); widen the window");
}

}  // namespace

OdometerPoint::OdometerPoint(KneadingMap Q, std::vector<std::uint8_t> bits, Kind kind)
    : Q_(std::move(Q)), bits_(std::move(bits)), kind_(kind)
{
    for (auto b : bits_)
        if (b > 1)
            throw DomainError("word entries must be 0 or 1");
    if (kind_ == Kind::FiniteSupport)
        trim(bits_);
    if (!membership(bits_, Q_))
        throw DomainError("word '" + word() + "' violates the odometer constraint");
}

OdometerPoint OdometerPoint::parse(KneadingMap Q, const std::string& word, Kind kind)
{
    std::vector<std::uint8_t> b;
    for (char c : word) {
        if (c != '0' && c != '1')
            throw ParseError("word must be a string of 0/1, got '" + word + "'");
        b.push_back(c == '1');
    }
    return OdometerPoint(std::move(Q), std::move(b), kind);
}

std::optional<std::size_t> OdometerPoint::first_one() const
{
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if (bits_[k])
            return k;
    return std::nullopt;
}

BigInt OdometerPoint::sigma(std::size_t n) const
{
    if (kind_ == Kind::Truncated && n >= bits_.size())
        throw HorizonError("sigma(x|" + std::to_string(n) + ") needs bits past the window");
    BigInt s = 0;
    for (std::size_t k = 0; k <= n && k < bits_.size(); ++k)
        if (bits_[k])
            s += Q_.S(std::uint64_t(k));
    return s;
}

BigInt OdometerPoint::sigma() const
{
    if (kind_ != Kind::FiniteSupport)
        throw DomainError("sigma of a truncated point is not defined");
    return window_sigma(bits_, Q_);
}

std::string OdometerPoint::word() const
{
    if (bits_.empty())
        return "0";
    std::string s;
    for (auto b : bits_)
        s.push_back(b ? '1' : '0');
    return s;
}

bool membership(const std::vector<std::uint8_t>& word, const KneadingMap& Q)
{
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (!word[k])
            continue;
        std::uint64_t lo = Q.at(k + 1);
        for (std::uint64_t j = lo; j < k; ++j)
            if (word[j])
                return false;
    }
    return true;
}

OdometerPoint expand(const BigInt& n, const KneadingMap& Q)
{
    if (n < 0)
        throw DomainError("expand needs n >= 0");
    std::vector<std::uint8_t> bits;
    if (n == 0)
        return OdometerPoint(Q, bits, OdometerPoint::Kind::FiniteSupport);
    std::uint64_t K = top_index(n, Q);
    bits.assign(K + 1, 0);
    BigInt rem = n;
    std::uint64_t hi = K;
    while (rem > 0) {
        // largest k <= hi with S_k <= rem, by bisection (S is increasing)
        std::uint64_t lo = 0, top = hi;
        while (lo < top) {
            std::uint64_t mid = lo + (top - lo + 1) / 2;
            if (Q.S(mid) <= rem)
                lo = mid;
            else
                top = mid - 1;
        }
        bits[lo] = 1;
        rem -= Q.S(lo);
        if (lo == 0)
            break;
        hi = lo - 1;
    }
    if (rem != 0)
        throw std::logic_error("greedy expansion left a remainder");
    return OdometerPoint(Q, std::move(bits), OdometerPoint::Kind::FiniteSupport);
}

OdometerPoint successor(const OdometerPoint& x)
{
    const KneadingMap& Q = x.map();
    if (x.finite_support())
        return expand(x.sigma() + 1, Q);
    const auto& w = x.bits();
    std::vector<std::uint8_t> y = expand(window_sigma(w, Q) + 1, Q).bits();
    if (y.size() > w.size())
        throw UnresolvedError("carry propagates past the window of length " + std::to_string(w.size()));
    y.resize(w.size(), 0);
    check_tail(w, y, Q);
    return OdometerPoint(Q, std::move(y), OdometerPoint::Kind::Truncated);
}

OdometerPoint predecessor(const OdometerPoint& x)
{
    const KneadingMap& Q = x.map();
    if (x.finite_support()) {
        if (x.bits().empty())
            throw DomainError("the zero point has no predecessor");
        return expand(x.sigma() - 1, Q);
    }
    const auto& w = x.bits();
    BigInt s = window_sigma(w, Q);
    if (s == 0)
        throw UnresolvedError("borrow propagates past the window of length " + std::to_string(w.size()));
    std::vector<std::uint8_t> y = expand(s - 1, Q).bits();
    y.resize(w.size(), 0);
    check_tail(w, y, Q);
    return OdometerPoint(Q, std::move(y), OdometerPoint::Kind::Truncated);
}

OdometerPoint carry_successor(const OdometerPoint& x)
{
    if (!x.finite_support())
        throw DomainError("carry_successor works on finite-support points");
    const KneadingMap& Q = x.map();
    std::vector<std::uint8_t> b = x.bits();
    // Invariant: bits below p are cleared and a carry worth S_p sits at p.
    std::size_t p = 0;
    for (;;) {
        if (b.size() <= p)
            b.resize(p + 1, 0);
        if (b[p]) {
            // S_p + S_p = S_{p+1} only if Q(p+1) = p.
            if (Q.at(p + 1) != p)
                throw std::logic_error("carry reached an occupied slot with Q(p+1) != p");
            b[p] = 0;
            ++p;
            continue;
        }
        std::size_t l = p + 1;
        while (l < b.size() && !b[l])
            ++l;
        if (l < b.size() && Q.at(l + 1) <= p) {
            // S_l + S_{Q(l+1)} = S_{l+1}
            if (Q.at(l + 1) != p)
                throw std::logic_error("carry conflict with Q(l+1) != p");
            b[l] = 0;
            p = l + 1;
            continue;
        }
        b[p] = 1;
        break;
    }
    return OdometerPoint(Q, std::move(b), OdometerPoint::Kind::FiniteSupport);
}

BigInt classical_projection(const OdometerPoint& x, std::uint64_t k)
{
    const KneadingMap& Q = x.map();
    if (Q.at(k + 1) != k)
        throw DomainError("Q(" + std::to_string(k + 1) + ") != " + std::to_string(k)
                          + ": no classical factor at this index");
    if (!x.finite_support() && x.resolved() < k)
        throw HorizonError("window shorter than the projection index");
    BigInt s = 0;
    const auto& b = x.bits();
    for (std::size_t i = 0; i < k && i < b.size(); ++i)
        if (b[i])
            s += Q.S(std::uint64_t(i));
    BigInt m = Q.S(k);
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace pcs
