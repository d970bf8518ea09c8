#include "bergman/weights.hpp"

#include <algorithm>
#include <numeric>

#include "bergman/common.hpp"

namespace bergman {

MultiIndex MultiIndex::unit(int n, int j) {
    MultiIndex k = zero(n);
    k[j] = 1;
    return k;
}

std::string to_string(const MultiIndex& k) {
    if (k.n == 1) return "(" + std::to_string(k[0]) + ")";
    return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + ")";
}

Weight::Weight(std::int64_t m1) : n(1), m{m1, 0} {
    if (m1 < 1) throw Error("weight entries must be positive");
}

Weight::Weight(std::int64_t m1, std::int64_t m2) : n(2), m{m1, m2} {
    if (m1 < 1 || m2 < 1) throw Error("weight entries must be positive");
}

std::string to_string(const Weight& m) {
    if (m.n == 1) return "(" + std::to_string(m[0]) + ")";
    return "(" + std::to_string(m[0]) + "," + std::to_string(m[1]) + ")";
}

std::string to_string(WeightClass c) {
    switch (c) {
        case WeightClass::circular: return "circular";
        case WeightClass::normal: return "normal";
        case WeightClass::nonnormal: return "nonnormal";
    }
    return "?";
}

std::string to_string(ClassKind c) {
    switch (c) {
        case ClassKind::kernel: return "kernel";
        case ClassKind::c: return "c";
        case ClassKind::c_prime: return "c_prime";
    }
    return "?";
}

ClassKind parse_class_kind(const std::string& s) {
    if (s == "kernel") return ClassKind::kernel;
    if (s == "c") return ClassKind::c;
    if (s == "c_prime" || s == "c'") return ClassKind::c_prime;
    throw Error("unknown coefficient class '" + s + "'");
}

namespace {

void require_pair(const Weight& m) {
    if (m.n != 2) throw DimensionMismatch("operation needs a weight in C^2");
}

void require_match(const MultiIndex& k, const Weight& m) {
    if (k.n != m.n) throw DimensionMismatch("multi-index and weight lengths differ");
}

}  // namespace

std::pair<Weight, std::int64_t> reduce(const Weight& m) {
    require_pair(m);
    const std::int64_t lo = std::min(m[0], m[1]);
    const std::int64_t hi = std::max(m[0], m[1]);
    const std::int64_t g = std::gcd(lo, hi);
    return {Weight(lo / g, hi / g), g};
}

WeightClass classify(const Weight& m) {
    require_pair(m);
    if (m[0] == m[1]) return WeightClass::circular;
    return std::min(m[0], m[1]) >= 2 ? WeightClass::normal : WeightClass::nonnormal;
}

std::int64_t weighted_degree(const MultiIndex& k, const Weight& m) {
    require_match(k, m);
    std::int64_t s = 0;
    for (int j = 0; j < m.n; ++j) s += m[j] * k[j];
    return s;
}

std::int64_t class_c(const MultiIndex& k, const Weight& m) {
    require_pair(m);
    return m[1] - m[0] + weighted_degree(k, m);
}

std::int64_t class_c_prime(const MultiIndex& k, const Weight& m) {
    require_pair(m);
    return m[0] - m[1] + weighted_degree(k, m);
}

std::vector<MultiIndex> surviving_indices(const Weight& m, ClassKind which, int bound) {
    require_pair(m);
    std::vector<MultiIndex> out;
    for (int k1 = 0; k1 <= bound; ++k1) {
        for (int k2 = 0; k2 <= bound; ++k2) {
            const MultiIndex k(k1, k2);
            std::int64_t v = 0;
            switch (which) {
                case ClassKind::kernel: v = weighted_degree(k, m); break;
                case ClassKind::c: v = class_c(k, m); break;
                case ClassKind::c_prime: v = class_c_prime(k, m); break;
            }
            if (v == 0) out.push_back(k);
        }
    }
    return out;
}

std::vector<MultiIndex> equivariant_monomials(const Weight& m, int j, int bound) {
    require_pair(m);
    if (j < 1 || j > m.n) throw Error("component index out of range");
    const std::int64_t target = m[j - 1];
    std::vector<MultiIndex> out;
    // <m,k> = target bounds k1 <= target/m1 and k2 <= target/m2.
    const int k1_max = static_cast<int>(std::min<std::int64_t>(bound, target / m[0]));
    for (int k1 = 0; k1 <= k1_max; ++k1) {
        const std::int64_t rest = target - m[0] * k1;
        if (rest % m[1] != 0) continue;
        const std::int64_t k2 = rest / m[1];
        if (k2 <= bound) out.emplace_back(k1, static_cast<int>(k2));
    }
    std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return std::tie(a.k[1], a.k[0]) < std::tie(b.k[1], b.k[0]);
    });
    return out;
}

bool linear_forced(const Weight& m, int bound) {
    require_pair(m);
    for (int j = 1; j <= m.n; ++j) {
        const auto eq = equivariant_monomials(m, j, bound);
        if (eq.size() != 1 || eq.front() != MultiIndex::unit(2, j - 1)) return false;
    }
    return true;
}

bool center_commutes(const Weight& m) {
    require_pair(m);
    return m[0] == m[1];
}

}  // namespace bergman
