#pragma once

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linform/integer.hpp"

namespace linform {

/// f(x_1,...,x_n) = u_1 x_1 + ... + u_n x_n with every u_i nonzero.
class LinearForm {
public:
    explicit LinearForm(std::vector<Int> coefficients) : coefficients_(std::move(coefficients)) {
        if (coefficients_.empty()) throw std::invalid_argument("LinearForm: at least one coefficient is required");
        for (const auto& c : coefficients_) {
            if (c == 0) throw std::invalid_argument("LinearForm: coefficients must be nonzero");
        }
    }

    LinearForm(std::initializer_list<long long> coefficients)
        : LinearForm(std::vector<Int>(coefficients.begin(), coefficients.end())) {}

    static LinearForm binary(const Int& u, const Int& v) { return LinearForm(std::vector<Int>{u, v}); }

    /// s(x, y) = x + y.
    static LinearForm sum() { return binary(1, 1); }
    /// d(x, y) = x - y.
    static LinearForm difference() { return binary(1, -1); }

    /// Parses "2,1" or "1,-1".
    static LinearForm parse(std::string_view text) {
        std::vector<Int> coeffs;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string_view::npos) comma = text.size();
            coeffs.push_back(parse_int(text.substr(start, comma - start)));
            start = comma + 1;
        }
        return LinearForm(std::move(coeffs));
    }

    const std::vector<Int>& coefficients() const noexcept { return coefficients_; }
    std::size_t arity() const noexcept { return coefficients_.size(); }
    bool is_binary() const noexcept { return coefficients_.size() == 2; }

    const Int& u() const {
        require_binary("u");
        return coefficients_[0];
    }
    const Int& v() const {
        require_binary("v");
        return coefficients_[1];
    }

    /// h_f = sum |u_i|.
    Int height() const {
        Int h = 0;
        for (const auto& c : coefficients_) h += abs(c);
        return h;
    }

    /// Evaluates the form at a point of matching arity.
    Int operator()(const std::vector<Int>& x) const {
        if (x.size() != arity()) throw std::invalid_argument("LinearForm: arity mismatch");
        Int acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += coefficients_[i] * x[i];
        return acc;
    }

    void require_binary(const char* op) const {
        if (!is_binary()) throw std::invalid_argument(std::string(op) + ": binary form required");
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;

    friend std::ostream& operator<<(std::ostream& os, const LinearForm& f) {
        os << '(';
        for (std::size_t i = 0; i < f.arity(); ++i) os << (i ? "," : "") << f.coefficients_[i];
        return os << ')';
    }

private:
    std::vector<Int> coefficients_;
};

}  // namespace linform
