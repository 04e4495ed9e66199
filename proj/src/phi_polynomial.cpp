#include "phicong/phi_polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace phicong {

PhiPolynomial::PhiPolynomial(std::initializer_list<std::pair<const Degree, Integer>> terms)
{
    for (const auto& [j, c] : terms) {
        add_to(j, c);
    }
}

PhiPolynomial::PhiPolynomial(Terms terms)
{
    for (auto& [j, c] : terms) {
        add_to(j, c);
    }
}

PhiPolynomial PhiPolynomial::monomial(Degree j, const Integer& c)
{
    PhiPolynomial p;
    p.set(j, c);
    return p;
}

Degree PhiPolynomial::min_degree() const
{
    if (terms_.empty()) {
        throw std::logic_error("min_degree of the empty phi-polynomial");
    }
    return terms_.begin()->first;
}

Degree PhiPolynomial::max_degree() const
{
    if (terms_.empty()) {
        throw std::logic_error("max_degree of the empty phi-polynomial");
    }
    return terms_.rbegin()->first;
}

Integer PhiPolynomial::coeff(Degree j) const
{
    const auto it = terms_.find(j);
    return it == terms_.end() ? Integer(0) : it->second;
}

void PhiPolynomial::set(Degree j, const Integer& c)
{
    if (j == 0) {
        throw std::invalid_argument("phi-polynomials carry no constant term");
    }
    if (sgn(c) == 0) {
        terms_.erase(j);
    } else {
        terms_[j] = c;
    }
}

void PhiPolynomial::add_to(Degree j, const Integer& c)
{
    if (j == 0) {
        throw std::invalid_argument("phi-polynomials carry no constant term");
    }
    if (sgn(c) == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(j, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) {
            terms_.erase(it);
        }
    }
}

void PhiPolynomial::add_product(Degree j, const Integer& a, const Integer& b)
{
    if (j == 0) {
        throw std::invalid_argument("phi-polynomials carry no constant term");
    }
    auto [it, inserted] = terms_.try_emplace(j);
    mpz_addmul(it->second.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sgn(it->second) == 0) {
        terms_.erase(it);
    }
}

std::string PhiPolynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : terms_) {
        os << (first ? "" : " + ") << c.get_str() << "*phi^" << j;
        first = false;
    }
    return os.str();
}

PhiPolynomial operator+(const PhiPolynomial& a, const PhiPolynomial& b)
{
    PhiPolynomial r = a;
    for (const auto& [j, c] : b.terms()) {
        r.add_to(j, c);
    }
    return r;
}

PhiPolynomial operator-(const PhiPolynomial& a, const PhiPolynomial& b)
{
    PhiPolynomial r = a;
    for (const auto& [j, c] : b.terms()) {
        r.add_to(j, -c);
    }
    return r;
}

PhiPolynomial operator*(const PhiPolynomial& a, const PhiPolynomial& b)
{
    PhiPolynomial r;
    for (const auto& [i, x] : a.terms()) {
        for (const auto& [j, y] : b.terms()) {
            r.add_product(i + j, x, y);
        }
    }
    return r;
}

PhiPolynomial operator*(const Integer& c, const PhiPolynomial& p)
{
    PhiPolynomial r;
    for (const auto& [j, x] : p.terms()) {
        r.set(j, c * x);
    }
    return r;
}

PhiPolynomial scale_pow2(const PhiPolynomial& p, unsigned k)
{
    PhiPolynomial::Terms t;
    for (const auto& [j, x] : p.terms()) {
        Integer y;
        mpz_mul_2exp(y.get_mpz_t(), x.get_mpz_t(), k);
        t.emplace(j, std::move(y));
    }
    return PhiPolynomial(std::move(t));
}

}  // namespace phicong
