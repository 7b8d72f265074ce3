#include "ulat/series.hpp"

#include <algorithm>
#include <sstream>

namespace ulat {

namespace {

int clamp_prec(long long p) {
    if (p >= Series::kExact) return Series::kExact;
    if (p <= -Series::kExact) return -Series::kExact;
    return static_cast<int>(p);
}

}  // namespace

Series::Series(const Field* f, int lo, std::vector<Elem> c, int prec) : F_(f), lo_(lo), c_(std::move(c)), prec_(prec) {
    if (!exact()) {
        if (prec_ <= lo_) {
            lo_ = prec_;
            c_.clear();
        } else {
            c_.resize(static_cast<std::size_t>(prec_ - lo_), 0);
        }
    }
    normalize();
}

void Series::normalize() {
    std::size_t first = 0;
    while (first < c_.size() && c_[first] == 0) ++first;
    if (first == c_.size()) {
        c_.clear();
        lo_ = exact() ? 0 : prec_;
        return;
    }
    if (first > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
        lo_ += static_cast<int>(first);
    }
    if (exact()) {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
}

Elem Series::coeff(int e) const {
    if (e < lo_) {
        if (c_.empty() && !exact() && e >= prec_) throw PrecisionError("series coefficient beyond precision");
        return 0;
    }
    if (e < hi()) return c_[static_cast<std::size_t>(e - lo_)];
    if (exact()) return 0;
    throw PrecisionError("series coefficient beyond precision");
}

bool Series::is_zero_to_prec() const { return c_.empty(); }

std::optional<int> Series::valuation() const {
    if (c_.empty()) {
        if (exact()) return std::nullopt;
        throw PrecisionError("valuation undetermined at precision " + std::to_string(prec_));
    }
    return lo_;
}

int Series::valuation_lower_bound() const {
    if (c_.empty()) return exact() ? kExact : prec_;
    return lo_;
}

Series Series::truncated(int prec) const {
    if (prec >= prec_) return *this;
    std::vector<Elem> c;
    for (int e = lo_; e < prec && e < hi(); ++e) c.push_back(c_[static_cast<std::size_t>(e - lo_)]);
    return Series(F_, lo_, std::move(c), prec);
}

Series Series::shifted(int k) const {
    Series r = *this;
    r.lo_ += k;
    if (!exact()) r.prec_ += k;
    if (r.c_.empty() && r.exact()) r.lo_ = 0;
    return r;
}

Series Series::scaled(Elem a) const {
    Series r = *this;
    for (auto& x : r.c_) x = F_->mul(x, a);
    r.normalize();
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = F_->neg(x);
    return r;
}

Series Series::map_coeffs(const std::vector<Elem>& table, const Field* target) const {
    Series r = *this;
    r.F_ = target;
    for (auto& x : r.c_) x = table.at(x);
    r.normalize();
    return r;
}

Series operator+(const Series& a, const Series& b) {
    const Field* F = a.F_ ? a.F_ : b.F_;
    int prec = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return Series(F, 0, {}, prec);
    int lo = std::min(a.c_.empty() ? b.lo_ : a.lo_, b.c_.empty() ? a.lo_ : b.lo_);
    int end = prec >= Series::kExact ? std::max(a.hi(), b.hi()) : prec;
    if (end <= lo) return Series(F, lo, {}, prec);
    std::vector<Elem> c(static_cast<std::size_t>(end - lo), 0);
    for (int e = a.lo_; e < a.hi() && e < end; ++e)
        if (e >= lo) c[static_cast<std::size_t>(e - lo)] = a.c_[static_cast<std::size_t>(e - a.lo_)];
    for (int e = b.lo_; e < b.hi() && e < end; ++e)
        if (e >= lo) {
            auto& slot = c[static_cast<std::size_t>(e - lo)];
            slot = F->add(slot, b.c_[static_cast<std::size_t>(e - b.lo_)]);
        }
    return Series(F, lo, std::move(c), prec);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    const Field* F = a.F_ ? a.F_ : b.F_;
    if (a.is_exact_zero() || b.is_exact_zero()) return Series::zero(F);
    long long va = a.valuation_lower_bound();
    long long vb = b.valuation_lower_bound();
    long long pa = a.exact() ? Series::kExact : a.prec_;
    long long pb = b.exact() ? Series::kExact : b.prec_;
    int prec = clamp_prec(std::min(pa + vb, pb + va));
    if (a.c_.empty() || b.c_.empty()) return Series(F, 0, {}, prec);
    int lo = a.lo_ + b.lo_;
    int end = prec >= Series::kExact ? a.hi() + b.hi() - 1 : prec;
    if (end <= lo) return Series(F, lo, {}, prec);
    std::vector<Elem> c(static_cast<std::size_t>(end - lo), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        Elem x = a.c_[i];
        if (x == 0) continue;
        int ei = a.lo_ + static_cast<int>(i);
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            int e = ei + b.lo_ + static_cast<int>(j);
            if (e >= end) break;
            auto& slot = c[static_cast<std::size_t>(e - lo)];
            slot = F->add(slot, F->mul(x, b.c_[j]));
        }
    }
    return Series(F, lo, std::move(c), prec);
}

Series Series::inverse(int want_prec) const {
    if (is_exact_zero()) throw std::domain_error("inverse of zero series");
    int v = *valuation();
    long long res_prec = exact() ? want_prec : std::min<long long>(want_prec, static_cast<long long>(prec_) - 2LL * v);
    if (res_prec >= kExact) throw std::invalid_argument("inverse of exact series needs a target precision");
    int n = static_cast<int>(res_prec + v);  // number of coefficients of u^{-1}
    if (n <= 0) return Series(F_, -v, {}, static_cast<int>(res_prec));
    std::vector<Elem> b(static_cast<std::size_t>(n), 0);
    Elem u0inv = F_->inv(c_[0]);
    b[0] = u0inv;
    for (int k = 1; k < n; ++k) {
        Elem acc = 0;
        for (int i = 1; i <= k; ++i) {
            Elem ui = i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
            if (ui == 0) continue;
            acc = F_->add(acc, F_->mul(ui, b[static_cast<std::size_t>(k - i)]));
        }
        b[static_cast<std::size_t>(k)] = F_->neg(F_->mul(u0inv, acc));
    }
    return Series(F_, -v, std::move(b), static_cast<int>(res_prec));
}

Series Series::compose(const Series& h, int want_prec) const {
    auto vh_opt = h.valuation();
    if (!vh_opt || *vh_opt <= 0) throw std::invalid_argument("compose needs a series of positive valuation");
    int vh = *vh_opt;
    if (c_.empty()) {
        if (exact()) return Series::zero(h.field());
        return Series(h.field(), 0, {}, clamp_prec(std::min<long long>(want_prec, 1LL * prec_ * vh)));
    }
    long long inner_prec = static_cast<long long>(want_prec) - 1LL * lo_ * vh;
    int ip = clamp_prec(inner_prec);
    Series acc = Series::zero(h.field());
    for (int e = hi() - 1; e >= lo_; --e) {
        acc = (acc * h).truncated(ip);
        acc = acc + Series::constant(h.field(), c_[static_cast<std::size_t>(e - lo_)]);
    }
    Series hp = Series::constant(h.field(), 1);
    if (lo_ > 0) {
        for (int i = 0; i < lo_; ++i) hp = (hp * h).truncated(ip);
    } else if (lo_ < 0) {
        Series hinv = h.inverse(clamp_prec(inner_prec));
        for (int i = 0; i < -lo_; ++i) hp = hp * hinv;
    }
    Series r = acc * hp;
    long long cap = want_prec;
    if (!exact()) cap = std::min<long long>(cap, 1LL * prec_ * vh);
    return r.truncated(clamp_prec(cap));
}

std::string Series::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i] << "*X^" << (lo_ + static_cast<int>(i));
        first = false;
    }
    if (first) os << "0";
    if (!exact()) os << " + O(X^" << prec_ << ")";
    return os.str();
}

}  // namespace ulat
