#include "cogload/scoring.hpp"

#include <cmath>
#include <sstream>

namespace cogload {

void EPolynomial::add_term(int exponent, long long count) {
    if (count == 0) return;
    long long& slot = terms_[exponent];
    slot += count;
    if (slot == 0) terms_.erase(exponent);
}

EPolynomial& EPolynomial::operator+=(const EPolynomial& other) {
    for (const auto& [exp, count] : other.terms_) add_term(exp, count);
    return *this;
}

std::string EPolynomial::format() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [exp, count] = *it;
        if (!first) out << " + ";
        first = false;
        if (exp == 0) {
            out << count;
            continue;
        }
        if (count != 1) out << count;
        out << "e";
        if (exp != 1) out << "^" << exp;
    }
    return out.str();
}

EPolynomial EPolynomial::parse(const std::string& text) {
    EPolynomial poly;
    std::istringstream in(text);
    std::string term;
    auto bad = [&](const std::string& t) {
        throw ParseError({1, 1}, "malformed score term '" + t + "'");
    };
    bool expect_plus = false;
    while (in >> term) {
        if (expect_plus) {
            if (term != "+") bad(term);
            expect_plus = false;
            continue;
        }
        expect_plus = true;
        size_t e_pos = term.find('e');
        long long count = 1;
        if (e_pos != 0) {
            try {
                size_t used = 0;
                count = std::stoll(e_pos == std::string::npos ? term
                                                              : term.substr(0, e_pos),
                                   &used);
                if (used != (e_pos == std::string::npos ? term.size() : e_pos))
                    bad(term);
            } catch (const std::logic_error&) {
                bad(term);
            }
        }
        if (e_pos == std::string::npos) {
            poly.add_term(0, count);
            continue;
        }
        int exp = 1;
        std::string rest = term.substr(e_pos + 1);
        if (!rest.empty()) {
            if (rest[0] != '^') bad(term);
            try {
                size_t used = 0;
                exp = std::stoi(rest.substr(1), &used);
                if (used != rest.size() - 1) bad(term);
            } catch (const std::logic_error&) {
                bad(term);
            }
        }
        poly.add_term(exp, count);
    }
    if (!expect_plus && !poly.empty())
        throw ParseError({1, 1}, "dangling '+' in score");
    return poly;
}

Growth parse_growth(const std::string& name) {
    if (name == "exponential" || name == "exp") return Growth::Exponential;
    if (name == "linear") return Growth::Linear;
    if (name == "quadratic") return Growth::Quadratic;
    throw ParseError({1, 1}, "unknown growth model '" + name + "'");
}

std::string to_string(Growth g) {
    switch (g) {
        case Growth::Exponential: return "exponential";
        case Growth::Linear: return "linear";
        case Growth::Quadratic: return "quadratic";
    }
    return "?";
}

double evaluate(const EPolynomial& poly, Growth growth) {
    double total = 0.0;
    for (const auto& [exp, count] : poly.terms()) {
        double per;
        switch (growth) {
            case Growth::Exponential: per = std::exp(static_cast<double>(exp)); break;
            case Growth::Linear: per = static_cast<double>(exp); break;
            case Growth::Quadratic: per = static_cast<double>(exp) * exp; break;
            default: per = 0.0;
        }
        total += static_cast<double>(count) * per;
    }
    if (!std::isfinite(total))
        throw InternalError("score is too large for numeric evaluation");
    return total;
}

int cognitive_load(const OperationNode& n) {
    return context_count(n) + parent_count(n) + 1;
}

EPolynomial cognitive_complexity(const OperationContextGraph& graph) {
    EPolynomial poly;
    for (const auto& n : graph.nodes) poly.add_term(cognitive_load(n));
    return poly;
}

}  // namespace cogload
