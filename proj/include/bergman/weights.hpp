#pragma once

// Exact integer arithmetic on quasi-circular weights and exponent tuples.
// Nothing in here touches floating point.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bergman {

/// Exponent tuple (k_1, ..., k_n), n in {1, 2}. Negative entries are only
/// produced by Laurent bases in one variable.
struct MultiIndex {
    int n = 0;
    std::array<int, 2> k{0, 0};

    MultiIndex() = default;
    explicit MultiIndex(int k1) : n(1), k{k1, 0} {}
    MultiIndex(int k1, int k2) : n(2), k{k1, k2} {}

    int operator[](int i) const { return k[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return k[static_cast<std::size_t>(i)]; }
    int total() const { return n == 1 ? k[0] : k[0] + k[1]; }

    static MultiIndex zero(int n) { return n == 1 ? MultiIndex(0) : MultiIndex(0, 0); }
    static MultiIndex unit(int n, int j);

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;
};

std::string to_string(const MultiIndex& k);

/// Weight (m_1, ..., m_n) of a quasi-circular domain; all entries >= 1.
struct Weight {
    int n = 0;
    std::array<std::int64_t, 2> m{1, 1};

    Weight() = default;
    explicit Weight(std::int64_t m1);
    Weight(std::int64_t m1, std::int64_t m2);

    std::int64_t operator[](int i) const { return m[static_cast<std::size_t>(i)]; }
    bool operator==(const Weight&) const = default;
};

std::string to_string(const Weight& m);

enum class WeightClass { circular, normal, nonnormal };
std::string to_string(WeightClass c);

enum class ClassKind { kernel, c, c_prime };
std::string to_string(ClassKind c);
ClassKind parse_class_kind(const std::string& s);

inline constexpr int kDefaultEnumerationBound = 64;

/// Sorts ascending and divides by the gcd; returns (reduced, gcd).
std::pair<Weight, std::int64_t> reduce(const Weight& m);

/// Classification of an already reduced weight.
WeightClass classify(const Weight& m);

std::int64_t weighted_degree(const MultiIndex& k, const Weight& m);

/// m2 - m1 + <m, k>: the exponent picked up by T_{1,2}(z,0) coefficients under f_theta.
std::int64_t class_c(const MultiIndex& k, const Weight& m);
/// m1 - m2 + <m, k>: the same for T_{2,1}(z,0).
std::int64_t class_c_prime(const MultiIndex& k, const Weight& m);

/// All k with 0 <= k_i <= bound whose class value vanishes, in lexicographic order.
std::vector<MultiIndex> surviving_indices(const Weight& m, ClassKind which, int bound = kDefaultEnumerationBound);

/// All k with 0 <= k_i <= bound and <m, k> = m_j (j is 1-based), sorted by
/// total degree then lexicographically. These are the monomials allowed in
/// component j of a polynomial map commuting with the weighted rotation.
std::vector<MultiIndex> equivariant_monomials(const Weight& m, int j, int bound = kDefaultEnumerationBound);

/// True iff every component admits only its own coordinate monomial.
bool linear_forced(const Weight& m, int bound = kDefaultEnumerationBound);

/// True iff diag(e^{i m1 t}, e^{i m2 t}) is central in Mat_2(C), i.e. m1 == m2.
bool center_commutes(const Weight& m);

}  // namespace bergman
