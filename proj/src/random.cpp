#include "poisson/random.hpp"

namespace poisson {

Rational SeededRandom::rational(long max_num, long max_den) {
    return Rational(between(-max_num, max_num)) / Rational(between(1, max_den));
}

Rational SeededRandom::nonzero_rational(long max_num, long max_den) {
    Rational r = rational(max_num, max_den);
    while (r.is_zero()) r = rational(max_num, max_den);
    return r;
}

Polynomial SeededRandom::polynomial(std::size_t first, std::size_t count, unsigned max_degree, std::size_t terms) {
    std::vector<Term> out;
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial m(first + count, 0);
        const auto degree = static_cast<unsigned>(below(max_degree + 1));
        for (unsigned k = 0; k < degree && count > 0; ++k) ++m[first + below(count)];
        out.push_back({std::move(m), nonzero_rational()});
    }
    return Polynomial::from_terms(std::move(out));
}

}  // namespace poisson
