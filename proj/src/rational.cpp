#include "ineq/rational.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>
#include <utility>

namespace ineq {

Rational::Rational(long num, long den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) {
        throw std::domain_error("zero denominator");
    }
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.find('.') != std::string_view::npos) {
        throw std::invalid_argument("decimal literals are not supported: " + std::string(text));
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::domain_error("zero-denominator literal");
    }
    if (negative) n = -n;
    return Rational(mpq_class(n, d));
}

Rational Rational::abs() const {
    Rational out;
    out.value_ = ::abs(value_);
    return out;
}

Rational Rational::inverse() const {
    if (is_zero()) {
        throw std::domain_error("inverse of zero");
    }
    Rational out;
    out.value_ = 1 / value_;
    out.value_.canonicalize();
    return out;
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(num, den));
}

std::size_t Rational::hash() const {
    return std::hash<std::string>{}(to_string());
}

Rational Rational::operator-() const {
    Rational out;
    out.value_ = -value_;
    return out;
}

Rational &Rational::operator+=(const Rational &rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational &Rational::operator-=(const Rational &rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational &Rational::operator*=(const Rational &rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

}  // namespace ineq
