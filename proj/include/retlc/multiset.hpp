#pragma once

#include <algorithm>
#include <map>

namespace retlc {

// Multiset over T: element -> positive multiplicity, absent means zero.
// Subtraction is monus (truncated at zero).
template <typename T>
class Multiset {
public:
    using Map = std::map<T, long long>;

    Multiset() = default;
    Multiset(std::initializer_list<std::pair<const T, long long>> init) {
        for (auto& [k, v] : init) add(k, v);
    }

    long long count(const T& x) const {
        auto it = m_.find(x);
        return it == m_.end() ? 0 : it->second;
    }

    void add(const T& x, long long k = 1) {
        if (k <= 0) return;
        m_[x] += k;
    }

    bool empty() const { return m_.empty(); }

    long long total() const {
        long long s = 0;
        for (auto& [k, v] : m_) s += v;
        return s;
    }

    const Map& entries() const { return m_; }

    friend Multiset operator+(const Multiset& a, const Multiset& b) {
        Multiset r = a;
        for (auto& [k, v] : b.m_) r.m_[k] += v;
        return r;
    }

    // monus: (a - b)(x) = max(a(x) - b(x), 0)
    friend Multiset operator-(const Multiset& a, const Multiset& b) {
        Multiset r;
        for (auto& [k, v] : a.m_) {
            long long d = v - b.count(k);
            if (d > 0) r.m_[k] = d;
        }
        return r;
    }

    friend Multiset operator*(long long k, const Multiset& a) {
        Multiset r;
        if (k > 0)
            for (auto& [key, v] : a.m_) r.m_[key] = k * v;
        return r;
    }

    // pointwise <=
    friend bool operator<=(const Multiset& a, const Multiset& b) {
        for (auto& [k, v] : a.m_)
            if (v > b.count(k)) return false;
        return true;
    }

    friend bool operator==(const Multiset& a, const Multiset& b) { return a.m_ == b.m_; }
    friend bool operator!=(const Multiset& a, const Multiset& b) { return !(a == b); }
    friend bool operator<(const Multiset& a, const Multiset& b) { return a.m_ < b.m_; }

    // true iff some element occurs in both (element-set intersection nonempty)
    friend bool shares_element(const Multiset& a, const Multiset& b) {
        for (auto& [k, v] : a.m_)
            if (b.count(k) > 0) return true;
        return false;
    }

private:
    Map m_;
};

} // namespace retlc
