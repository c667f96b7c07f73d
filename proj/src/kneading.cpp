#include "postcrit/kneading.hpp"

#include "postcrit/errors.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

namespace pcs {

namespace {

// 2^(3^r) - 2, cached: deep levels are megabytes and get compared often.
const BigInt& tower_value(std::uint64_t r)
{
    static std::mutex mu;
    static std::deque<BigInt> cache;
    if (r > 20)
        throw HorizonError("tower level " + std::to_string(r) + " is too large to materialize");
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= r) {
        std::uint64_t e = 1;
        for (std::size_t i = 0; i < cache.size(); ++i)
            e *= 3;
        cache.push_back(pow2(e) - 2);
    }
    return cache[r];
}

// 3^r, or 0 when it would overflow (no integer we handle has that many bits).
std::uint64_t pow3_or_zero(std::uint64_t r)
{
    if (r >= 40)
        return 0;
    std::uint64_t e = 1;
    for (std::uint64_t i = 0; i < r; ++i)
        e *= 3;
    return e;
}

}  // namespace

// ---------------------------------------------------------------- levels

LevelSequence LevelSequence::tower() { return LevelSequence(); }

LevelSequence LevelSequence::list(std::vector<BigInt> values)
{
    if (values.empty() || values[0] != 0)
        throw DomainError("q sequence must start with q_0 = 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw DomainError("q sequence is not strictly increasing at index " + std::to_string(i));
    LevelSequence s;
    s.tower_ = false;
    s.values_ = std::move(values);
    return s;
}

std::optional<std::uint64_t> LevelSequence::size() const
{
    if (tower_)
        return std::nullopt;
    return values_.size();
}

BigInt LevelSequence::at(std::uint64_t r) const
{
    if (tower_)
        return tower_value(r);
    if (r >= values_.size())
        throw HorizonError("q_" + std::to_string(r) + " is past the end of the q list");
    return values_[r];
}

bool LevelSequence::bounds(const BigInt& k, std::uint64_t r) const
{
    if (k <= 0)
        return true;
    if (tower_) {
        if (r == 0)
            return false;
        std::uint64_t e = pow3_or_zero(r);
        if (e == 0)
            return true;
        std::uint64_t nb = mpz_sizeinbase(k.get_mpz_t(), 2);
        if (nb < e)
            return true;
        if (nb > e)
            return false;
        return k <= tower_value(r);
    }
    if (r < values_.size())
        return k <= values_[r];
    // q_r >= q_last + (r - last) by strict increase.
    std::uint64_t last = values_.size() - 1;
    if (k <= values_[last] + BigInt(std::to_string(r - last)))
        return true;
    throw HorizonError("cannot compare with q_" + std::to_string(r) + ": past the end of the q list");
}

// ---------------------------------------------------------------- b

BSequence BSequence::finite(std::uint64_t m)
{
    if (m == 0)
        throw DomainError("finite(m) needs m >= 1");
    BSequence s;
    s.kind_ = Kind::Finite;
    s.m_ = m;
    return s;
}

BSequence BSequence::countable()
{
    BSequence s;
    s.kind_ = Kind::Countable;
    return s;
}

BSequence BSequence::cantor()
{
    BSequence s;
    s.kind_ = Kind::Cantor;
    return s;
}

BSequence BSequence::list(std::vector<std::uint64_t> values)
{
    if (values.empty() || values[0] != 0)
        throw DomainError("b sequence must start with b(0) = 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw DomainError("b sequence is not strictly increasing at index " + std::to_string(i));
    BSequence s;
    s.kind_ = Kind::List;
    s.values_ = std::move(values);
    return s;
}

std::optional<std::uint64_t> BSequence::size() const
{
    if (kind_ == Kind::List)
        return values_.size();
    return std::nullopt;
}

std::uint64_t BSequence::operator()(std::uint64_t r) const
{
    switch (kind_) {
    case Kind::Finite:
        return r == 0 ? 0 : r - 1 + m_;
    case Kind::Countable: {
        // floor((sqrt(8r+1) - 1)/2) = floor((isqrt(8r+1) - 1)/2)
        BigInt s = isqrt(BigInt(std::to_string(8 * r + 1)));
        return r + (s.get_ui() - 1) / 2;
    }
    case Kind::Cantor:
        return 2 * r;
    case Kind::List:
        if (r >= values_.size())
            throw HorizonError("b(" + std::to_string(r) + ") is past the end of the b list");
        return values_[r];
    }
    return 0;
}

// ---------------------------------------------------------------- spec

ResonantSpec::ResonantSpec(LevelSequence q, BSequence b, unsigned level_cap)
    : q_(std::move(q)), b_(std::move(b)), cap_(level_cap)
{
}

ResonantSpec ResonantSpec::finite(std::uint64_t m)
{
    return ResonantSpec(LevelSequence::tower(), BSequence::finite(m));
}

ResonantSpec ResonantSpec::countable()
{
    return ResonantSpec(LevelSequence::tower(), BSequence::countable());
}

ResonantSpec ResonantSpec::cantor()
{
    return ResonantSpec(LevelSequence::tower(), BSequence::cantor());
}

ResonantSpec ResonantSpec::with_level_cap(unsigned cap) const
{
    ResonantSpec s = *this;
    s.cap_ = cap;
    return s;
}

BigInt ResonantSpec::q(std::uint64_t r) const
{
    if (q_.is_tower() && r > cap_)
        throw HorizonError("q_" + std::to_string(r) + " is beyond the level cap " + std::to_string(cap_)
                           + "; raise the cap explicitly to materialize it");
    return q_.at(r);
}

BigInt ResonantSpec::block_start(std::uint64_t r) const
{
    if (r == 0)
        return 0;
    return q(b(r)) + 1;
}

std::uint64_t ResonantSpec::level_of(const BigInt& k) const
{
    if (at_most_q(k, b(1)))
        return 0;
    std::uint64_t r = 1;
    while (!at_most_q(k, b(r + 1)))
        ++r;
    return r;
}

std::uint64_t ResonantSpec::level_floor(const BigInt& v) const
{
    std::uint64_t r = 0;
    while (!at_most_q(v + 1, r + 1))
        ++r;
    return r;
}

std::string ResonantSpec::describe() const
{
    std::ostringstream os;
    os << "resonant(q=" << (q_.is_tower() ? "pow3tower" : "list") << ", b=";
    switch (b_.kind()) {
    case BSequence::Kind::Finite: os << "finite(" << b_.m() << ")"; break;
    case BSequence::Kind::Countable: os << "countable"; break;
    case BSequence::Kind::Cantor: os << "cantor"; break;
    case BSequence::Kind::List: os << "list"; break;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- map

struct KneadingMap::Impl {
    Kind kind;
    std::optional<ResonantSpec> spec;
    std::vector<std::uint64_t> table;

    mutable std::mutex mu;
    mutable std::vector<BigInt> dense{BigInt(1)};  // S_0, S_1, ...
    mutable std::vector<BigInt> at_levels{BigInt(1)};  // S_{q_0}, S_{q_1}, ...
};

namespace {
constexpr std::uint64_t dense_limit = std::uint64_t(1) << 26;
}

KneadingMap KneadingMap::resonant(ResonantSpec spec)
{
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Resonant;
    impl->spec = std::move(spec);
    return KneadingMap(impl);
}

KneadingMap KneadingMap::table(std::vector<std::uint64_t> values)
{
    if (values.empty())
        throw DomainError("empty kneading table");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Table;
    impl->table = std::move(values);
    return KneadingMap(impl);
}

KneadingMap KneadingMap::fibonacci()
{
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Fibonacci;
    return KneadingMap(impl);
}

KneadingMap KneadingMap::doubling()
{
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Doubling;
    return KneadingMap(impl);
}

KneadingMap KneadingMap::zero()
{
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Zero;
    return KneadingMap(impl);
}

KneadingMap::Kind KneadingMap::kind() const { return impl_->kind; }

std::string KneadingMap::name() const
{
    switch (impl_->kind) {
    case Kind::Resonant: return impl_->spec->describe();
    case Kind::Table: return "table(" + std::to_string(impl_->table.size()) + ")";
    case Kind::Fibonacci: return "fibonacci";
    case Kind::Doubling: return "doubling";
    case Kind::Zero: return "zero";
    }
    return "?";
}

const ResonantSpec* KneadingMap::spec() const
{
    return impl_->spec ? &*impl_->spec : nullptr;
}

const std::vector<std::uint64_t>* KneadingMap::table_values() const
{
    return impl_->kind == Kind::Table ? &impl_->table : nullptr;
}

std::optional<BigInt> KneadingMap::horizon() const
{
    if (impl_->kind == Kind::Table)
        return BigInt(std::to_string(impl_->table.size() - 1));
    return std::nullopt;
}

bool KneadingMap::nondecreasing() const
{
    if (impl_->kind != Kind::Table)
        return true;
    const auto& t = impl_->table;
    return std::is_sorted(t.begin(), t.end());
}

bool KneadingMap::diverging() const
{
    return impl_->kind == Kind::Resonant || impl_->kind == Kind::Fibonacci
        || impl_->kind == Kind::Doubling;
}

BigInt KneadingMap::value(const BigInt& k) const
{
    if (k < 0)
        throw DomainError("negative index");
    switch (impl_->kind) {
    case Kind::Resonant: {
        const auto& s = *impl_->spec;
        return s.q(s.level_of(k));
    }
    case Kind::Table: {
        if (k >= impl_->table.size())
            throw HorizonError("index " + str(k) + " is past the kneading table (horizon "
                               + std::to_string(impl_->table.size() - 1) + ")");
        return BigInt(std::to_string(impl_->table[k.get_ui()]));
    }
    case Kind::Fibonacci: return k >= 2 ? BigInt(k - 2) : BigInt(0);
    case Kind::Doubling: return k >= 1 ? BigInt(k - 1) : BigInt(0);
    case Kind::Zero: return 0;
    }
    return 0;
}

std::uint64_t KneadingMap::at(std::uint64_t k) const
{
    switch (impl_->kind) {
    case Kind::Table:
        if (k >= impl_->table.size())
            throw HorizonError("index " + std::to_string(k) + " is past the kneading table (horizon "
                               + std::to_string(impl_->table.size() - 1) + ")");
        return impl_->table[k];
    case Kind::Fibonacci: return k >= 2 ? k - 2 : 0;
    case Kind::Doubling: return k >= 1 ? k - 1 : 0;
    case Kind::Zero: return 0;
    case Kind::Resonant: break;
    }
    return to_u64(value(BigInt(std::to_string(k))), "kneading value");
}

BigInt KneadingMap::last_at_most(const BigInt& v) const
{
    if (v < 0)
        throw DomainError("negative value");
    switch (impl_->kind) {
    case Kind::Resonant: {
        const auto& s = *impl_->spec;
        return s.q(s.b(s.level_floor(v) + 1));
    }
    case Kind::Fibonacci: return v + 2;
    case Kind::Doubling: return v + 1;
    case Kind::Zero:
        throw DomainError("Q = 0 does not diverge: every index has Q <= " + str(v));
    case Kind::Table: {
        if (!nondecreasing())
            throw DomainError("table is not non-decreasing");
        const auto& t = impl_->table;
        auto it = std::upper_bound(t.begin(), t.end(), v.get_ui());
        if (!v.fits_ulong_p() || it == t.end())
            throw HorizonError("last index with Q <= " + str(v) + " lies past the kneading table");
        return BigInt(std::to_string(it - t.begin() - 1));
    }
    }
    return 0;
}

BigInt KneadingMap::next_image_at_least(const BigInt& v) const
{
    if (v <= 0)
        return 0;
    return value(last_at_most(v - 1) + 1);
}

BigInt KneadingMap::S(std::uint64_t k) const
{
    Impl& d = *impl_;
    if (d.kind == Kind::Resonant)
        return S(BigInt(std::to_string(k)));
    if (k >= dense_limit)
        throw HorizonError("cutting time index " + std::to_string(k) + " exceeds the dense memo limit");
    std::lock_guard<std::mutex> lock(d.mu);
    while (d.dense.size() <= k) {
        std::uint64_t i = d.dense.size();
        std::uint64_t qi = at(i);
        if (qi >= i)
            throw DomainError("Q(" + std::to_string(i) + ") = " + std::to_string(qi) + " violates Q(k) <= k-1");
        d.dense.push_back(d.dense[i - 1] + d.dense[qi]);
    }
    return d.dense[k];
}

BigInt KneadingMap::S(const BigInt& k) const
{
    if (k < 0)
        throw DomainError("negative index");
    Impl& d = *impl_;
    if (d.kind != Kind::Resonant)
        return S(to_u64(k, "cutting time index"));
    const ResonantSpec& spec = *d.spec;
    if (k == 0)
        return 1;
    // Q is constant on (q_s, q_{s+1}], so S_k = S_{q_s} + (k - q_s) S_{Q(k)}.
    std::uint64_t s = spec.level_floor(k - 1);
    auto at_level = [&](std::uint64_t r) -> BigInt {
        std::lock_guard<std::mutex> lock(d.mu);
        while (d.at_levels.size() <= r) {
            std::uint64_t t = d.at_levels.size();  // compute S_{q_t}
            BigInt qt = spec.q(t), qp = spec.q(t - 1);
            std::uint64_t lv = spec.level_of(qt);
            d.at_levels.push_back(d.at_levels[t - 1] + (qt - qp) * d.at_levels[lv]);
        }
        return d.at_levels[r];
    };
    BigInt base = at_level(s);
    std::uint64_t t = spec.level_of(k);
    return base + (k - spec.q(s)) * at_level(t);
}

// ---------------------------------------------------------------- ops

CuttingTimes cutting_times(const KneadingMap& Q, std::uint64_t K)
{
    CuttingTimes out;
    out.S.reserve(K + 1);
    out.S.push_back(1);
    if (Q.at(0) != 0)
        throw DomainError("Q(0) must be 0");
    for (std::uint64_t k = 1; k <= K; ++k) {
        std::uint64_t qk = Q.at(k);
        if (qk >= k)
            throw DomainError("Q(" + std::to_string(k) + ") = " + std::to_string(qk) + " violates Q(k) <= k-1");
        out.S.push_back(out.S[k - 1] + out.S[qk]);
    }
    return out;
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Admissible: return "admissible";
    case Verdict::NotAdmissible: return "not-admissible";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

AdmissibilityReport is_admissible(const KneadingMap& Q, std::uint64_t K, std::uint64_t window)
{
    if (window == 0)
        window = K;
    AdmissibilityReport rep;
    std::optional<std::uint64_t> hz;
    if (auto h = Q.horizon())
        hz = to_u64(*h, "horizon");
    auto evaluable = [&](std::uint64_t i) { return !hz || i <= *hz; };

    if (!evaluable(K))
        throw HorizonError("Q is not evaluable up to K = " + std::to_string(K));
    if (Q.at(0) != 0)
        return {Verdict::NotAdmissible, 0, "Q(0) != 0"};
    for (std::uint64_t k = 1; k <= K; ++k)
        if (Q.at(k) > k - 1)
            return {Verdict::NotAdmissible, k, "Q(k) > k-1"};

    // A globally non-decreasing rule dominates termwise, so ties all the
    // way through the window are still fine. Tables only know their prefix.
    bool tail_known = Q.nondecreasing() && !hz;
    for (std::uint64_t k = 1; k <= K; ++k) {
        std::uint64_t base = Q.at(Q.at(k));
        bool decided = false;
        for (std::uint64_t j = 1; j <= window; ++j) {
            if (!evaluable(k + j) || !evaluable(base + j))
                break;
            std::uint64_t a = Q.at(k + j), b = Q.at(base + j);
            if (a > b) {
                decided = true;
                break;
            }
            if (a < b)
                return {Verdict::NotAdmissible, k, "lexicographic condition fails"};
        }
        if (!decided && !tail_known && rep.verdict == Verdict::Admissible) {
            rep.verdict = Verdict::Indeterminate;
            rep.witness = k;
            rep.reason = "window exhausted before the comparison resolved";
        }
    }
    return rep;
}

std::vector<Rational> divergence_partials(const ResonantSpec& spec, std::uint64_t R)
{
    if (R < 1)
        throw DomainError("R must be >= 1");
    KneadingMap Q = KneadingMap::resonant(spec);
    std::vector<Rational> out;
    Rational p = 1;
    for (std::uint64_t r = 0; r < R; ++r) {
        p *= 1 - ratio(Q.S(spec.q(r)), Q.S(spec.q(r + 1)));
        out.push_back(p);
    }
    return out;
}

Rational divergence_product(const ResonantSpec& spec, std::uint64_t R)
{
    return divergence_partials(spec, R).back();
}

BigInt level_growth_bound(const ResonantSpec& spec, std::uint64_t r)
{
    BigInt p = 1;
    for (std::uint64_t s = 0; s < r; ++s)
        p *= 1 + spec.q(s + 1) - spec.q(s);
    return p;
}

bool check_norma(const ResonantSpec& spec, std::uint64_t r)
{
    if (r < 1)
        throw DomainError("check_norma needs r >= 1");
    BigInt rr(std::to_string(r));
    return spec.q(r + 1) >= spec.q(r) + rr * rr * level_growth_bound(spec, r);
}

namespace {

bool parse_finite(const std::string& name, std::uint64_t& m)
{
    std::string digits;
    if (name.rfind("finite:", 0) == 0)
        digits = name.substr(7);
    else if (name.rfind("finite(", 0) == 0 && name.back() == ')')
        digits = name.substr(7, name.size() - 8);
    else
        return false;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad finite(m) name: " + name);
    m = std::stoull(digits);
    return true;
}

}  // namespace

ResonantSpec builtin_spec(const std::string& name)
{
    std::uint64_t m;
    if (parse_finite(name, m))
        return ResonantSpec::finite(m);
    if (name == "countable")
        return ResonantSpec::countable();
    if (name == "cantor")
        return ResonantSpec::cantor();
    if (name == "fibonacci")
        throw DomainError("fibonacci is a closed-form map, not a resonant spec");
    throw ParseError("unknown builtin: " + name);
}

KneadingMap builtin_map(const std::string& name)
{
    if (name == "fibonacci")
        return KneadingMap::fibonacci();
    if (name == "doubling")
        return KneadingMap::doubling();
    if (name == "zero")
        return KneadingMap::zero();
    return KneadingMap::resonant(builtin_spec(name));
}

}  // namespace pcs
