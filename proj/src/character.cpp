#include "nonres/character.hpp"

#include <cmath>
#include <numeric>

namespace nonres {

CharValue root_of_unity(uint64_t num, uint64_t den) {
    if (den == 0) throw std::domain_error("root_of_unity: zero denominator");
    num %= den;
    const uint64_t g = std::gcd(num, den);
    if (num == 0) return CharValue{false, 0, 1};
    return CharValue{false, num / g, den / g};
}

CharValue operator*(const CharValue& a, const CharValue& b) {
    if (a.zero || b.zero) return char_zero();
    // num/den fractions stay below ~10^6 here, so the cross products fit u64.
    const uint64_t den = a.den * b.den;
    const uint64_t num = a.num * b.den + b.num * a.den;
    return root_of_unity(num, den);
}

std::complex<double> complex_value(const CharValue& v) {
    if (v.zero) return {0.0, 0.0};
    if (v.num == 0) return {1.0, 0.0};
    const long double angle =
        2.0L * 3.141592653589793238462643383279502884L * static_cast<long double>(v.num) / static_cast<long double>(v.den);
    return {static_cast<double>(cosl(angle)), static_cast<double>(sinl(angle))};
}

CharacterSpec CharacterSpec::tabled(std::shared_ptr<const IndexTable> table, uint64_t c) {
    if (!table) throw std::domain_error("CharacterSpec: null table");
    if (table->p < 2) throw std::domain_error("CharacterSpec: bad table");
    if (c > table->p - 2 && table->p > 2) throw std::domain_error("CharacterSpec: index out of range");
    CharacterSpec chi;
    chi.mode_ = Mode::tabled;
    chi.p_ = table->p;
    chi.c_ = c;
    chi.table_ = std::move(table);
    return chi;
}

CharacterSpec CharacterSpec::quadratic(uint64_t p) {
    if (!is_prime64(p) || p < 3) throw std::domain_error("CharacterSpec: quadratic mode needs an odd prime");
    CharacterSpec chi;
    chi.mode_ = Mode::quadratic;
    chi.p_ = p;
    chi.c_ = 0;
    return chi;
}

uint64_t CharacterSpec::order() const {
    if (mode_ == Mode::quadratic) return 2;
    const uint64_t m = p_ - 1;
    return m / std::gcd(c_, m);
}

std::string CharacterSpec::id() const {
    return mode_ == Mode::quadratic ? "quadratic" : std::to_string(c_);
}

CharValue CharacterSpec::operator()(int64_t n) const {
    const int64_t sp = static_cast<int64_t>(p_);
    const uint64_t r = static_cast<uint64_t>(((n % sp) + sp) % sp);
    if (r == 0) return char_zero();
    if (mode_ == Mode::quadratic) {
        const int j = jacobi(static_cast<int64_t>(r), p_);
        return j == 1 ? root_of_unity(0, 1) : root_of_unity(1, 2);
    }
    const uint64_t m = p_ - 1;
    const uint64_t e = mul_mod(c_, table_->ind[r], m);
    return root_of_unity(e, m);
}

std::vector<CharacterSpec> enumerate_characters(std::shared_ptr<const IndexTable> table) {
    std::vector<CharacterSpec> out;
    if (table->p < 3) return out;
    out.reserve(table->p - 2);
    for (uint64_t c = 1; c <= table->p - 2; ++c) out.push_back(CharacterSpec::tabled(table, c));
    return out;
}

std::vector<CharacterSpec> enumerate_characters(uint64_t p, uint64_t table_limit) {
    auto table = std::make_shared<const IndexTable>(build_index_table(p, table_limit));
    return enumerate_characters(std::move(table));
}

}  // namespace nonres
