#pragma once

#include <map>
#include <string>

#include "cogload/opgraph.hpp"

namespace cogload {

// Integer-coefficient polynomial in powers of e. The exact score of a graph
// lives here; floating point only enters when a growth model is evaluated.
class EPolynomial {
public:
    void add_term(int exponent, long long count = 1);
    EPolynomial& operator+=(const EPolynomial& other);

    bool operator==(const EPolynomial& other) const { return terms_ == other.terms_; }
    bool empty() const { return terms_.empty(); }
    const std::map<int, long long>& terms() const { return terms_; }

    // "2e^4 + 3e^3 + e" — descending exponents, unit coefficients and the
    // ^1 suffix omitted, e^0 rendered as a bare integer.
    std::string format() const;
    static EPolynomial parse(const std::string& text);

private:
    std::map<int, long long> terms_;  // exponent -> count, no zero entries
};

// How a load level is priced when a numeric score is requested.
enum class Growth { Exponential, Linear, Quadratic };

Growth parse_growth(const std::string& name);
std::string to_string(Growth g);

// Numeric value of the polynomial under the growth model; exponential uses
// exp(k) per term. Throws InternalError if the result is not finite.
double evaluate(const EPolynomial& poly, Growth growth);

// CL(n) = |contexts| + distinct producing nodes + 1.
int cognitive_load(const OperationNode& n);

// CC = sum over nodes of e^CL, kept exact.
EPolynomial cognitive_complexity(const OperationContextGraph& graph);

}  // namespace cogload
