#pragma once
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gfp {

using Q = mpq_class;

inline uint64_t hash_mix(uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

// Sparse Q-linear combination over a hashable key; zero coefficients are never stored.
template <class K, class H = std::hash<K>>
class Lin {
public:
    using Map = std::unordered_map<K, Q, H>;

    Lin() = default;
    Lin(const K& k, const Q& c) { add(k, c); }

    void add(const K& k, const Q& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const Lin& o, const Q& c = 1) {
        if (c == 0) return;
        for (const auto& [k, v] : o.terms_) add(k, c == 1 ? v : Q(v * c));
    }
    Q coeff(const K& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Q(0) : it->second;
    }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    void clear() { terms_.clear(); }
    void reserve(size_t n) { terms_.reserve(n); }

    Lin& operator+=(const Lin& o) { add(o); return *this; }
    Lin& operator-=(const Lin& o) { add(o, Q(-1)); return *this; }
    Lin& operator*=(const Q& c) {
        if (c == 0) terms_.clear();
        else for (auto& kv : terms_) kv.second *= c;
        return *this;
    }
    friend Lin operator+(Lin a, const Lin& b) { a += b; return a; }
    friend Lin operator-(Lin a, const Lin& b) { a -= b; return a; }
    friend Lin operator*(Lin a, const Q& c) { a *= c; return a; }
    friend Lin operator*(const Q& c, Lin a) { a *= c; return a; }
    Lin operator-() const { Lin r = *this; r *= Q(-1); return r; }
    bool operator==(const Lin& o) const { return terms_ == o.terms_; }
    bool operator!=(const Lin& o) const { return !(*this == o); }

    // Terms in key order, for printing and deterministic iteration.
    template <class Less = std::less<K>>
    std::vector<std::pair<K, Q>> sorted(Less less = Less()) const {
        std::vector<std::pair<K, Q>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return less(a.first, b.first); });
        return v;
    }

    template <class F>
    Lin map_keys(F&& f) const {
        Lin r;
        for (const auto& [k, v] : terms_) r.add(f(k), v);
        return r;
    }

private:
    Map terms_;
};

}  // namespace gfp
