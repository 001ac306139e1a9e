#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nonres/arith.hpp"

namespace nonres {

// Exact character value: zero, or the root of unity exp(2*pi*i * num/den)
// carried as a reduced fraction of a full turn so that membership tests
// ("equals 1", "not in {0,1}") are exact, never float comparisons.
struct CharValue {
    bool zero = false;
    uint64_t num = 0;
    uint64_t den = 1;

    bool is_zero() const { return zero; }
    bool is_one() const { return !zero && num == 0; }
    friend bool operator==(const CharValue&, const CharValue&) = default;
};

CharValue root_of_unity(uint64_t num, uint64_t den);
inline CharValue char_zero() { return CharValue{true, 0, 1}; }

// Product of two character values (exponent addition mod 1; zero absorbs).
CharValue operator*(const CharValue& a, const CharValue& b);

std::complex<double> complex_value(const CharValue& v);

// Dirichlet character mod a prime p. Tabled mode indexes the character by
// an exponent c in [0, p-2] against the smallest primitive root, so the map
// c -> chi is stable across runs. Quadratic mode evaluates the Legendre
// symbol through Jacobi symbols: no table, works for any prime p, order 2.
class CharacterSpec {
  public:
    enum class Mode { tabled, quadratic };

    static CharacterSpec tabled(std::shared_ptr<const IndexTable> table, uint64_t c);
    static CharacterSpec quadratic(uint64_t p);

    Mode mode() const { return mode_; }
    uint64_t p() const { return p_; }
    uint64_t index() const { return c_; }
    bool principal() const { return mode_ == Mode::tabled && c_ == 0; }
    uint64_t order() const;
    std::string id() const;  // decimal c, or "quadratic"
    const IndexTable* table() const { return table_.get(); }

    CharValue operator()(int64_t n) const;

  private:
    CharacterSpec() = default;

    Mode mode_ = Mode::quadratic;
    uint64_t p_ = 0;
    uint64_t c_ = 0;
    std::shared_ptr<const IndexTable> table_;
};

inline CharValue eval(const CharacterSpec& chi, int64_t n) { return chi(n); }

// The p-2 non-principal characters mod p (c = 1..p-2), sharing one table.
std::vector<CharacterSpec> enumerate_characters(uint64_t p, uint64_t table_limit = kDefaultTableLimit);
std::vector<CharacterSpec> enumerate_characters(std::shared_ptr<const IndexTable> table);

}  // namespace nonres
