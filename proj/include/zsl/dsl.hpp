#pragma once

// Text form of the test-function algebra, the inverse of to_dsl:
//   loggauss:a=<real>,mu=<real>[,amp=<real>[(+|-)<real>i]]
//   j<w>(<expr>)            involution J_w
//   scale:<real>(<expr>)    scaling action
//   conv(<expr>,<expr>)     multiplicative convolution
//   smooth(<expr>)          theta-smoothed image
//   sum(<expr>;<expr>...)   finite sum
//   conj(<expr>)            complex conjugate
// Whitespace is insignificant everywhere.  The only delicate point is the
// comma: inside loggauss it separates parameters, inside conv it separates
// operands, and the grammar stays LL(1) because a parameter comma is always
// followed by `<key>=`.

#include <cctype>
#include <cstdlib>
#include <string>

#include "zsl/common.hpp"
#include "zsl/mellin.hpp"

namespace zsl {

namespace detail {

class DslParser {
  public:
    explicit DslParser(const std::string& raw) {
        for (char c : raw)
            if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }

    TestFunction run() {
        if (text_.empty()) fail_invalid("dsl: empty expression");
        TestFunction f = expr();
        if (pos_ != text_.size()) fail("trailing input");
        return f;
    }

  private:
    std::string text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::string near = text_.substr(pos_, 16);
        fail_invalid("dsl: " + what + " at offset " + std::to_string(pos_) + " near \"" + near +
                     "\"");
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) fail("expected a number");
        if (!std::isfinite(v)) fail("non-finite number");
        pos_ += std::size_t(end - start);
        return v;
    }

    std::string word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    // true when the text at `at` reads `<letters>=`, i.e. a parameter key
    bool key_follows(std::size_t at) const {
        std::size_t j = at;
        while (j < text_.size() && std::isalpha(static_cast<unsigned char>(text_[j]))) ++j;
        return j > at && j < text_.size() && text_[j] == '=';
    }

    TestFunction expr() {
        // j<w>( ... ) -- 'j' immediately followed by a number
        if (peek() == 'j' && pos_ + 1 < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
             text_[pos_ + 1] == '-' || text_[pos_ + 1] == '.')) {
            ++pos_;
            double w = number();
            expect('(');
            TestFunction kid = expr();
            expect(')');
            return apply_J(kid, w);
        }
        std::string head = word();
        if (head == "loggauss") return loggauss_tail();
        if (head == "scale") {
            expect(':');
            double lambda = number();
            expect('(');
            TestFunction kid = expr();
            expect(')');
            return scale_action(kid, lambda);
        }
        if (head == "conv") {
            expect('(');
            TestFunction a = expr();
            expect(',');
            TestFunction b = expr();
            expect(')');
            return mult_convolve(a, b);
        }
        if (head == "conj") {
            expect('(');
            TestFunction kid = expr();
            expect(')');
            return conjugate(kid);
        }
        if (head == "smooth") {
            expect('(');
            TestFunction kid = expr();
            expect(')');
            return smoothed_image(kid);
        }
        if (head == "sum") {
            expect('(');
            std::vector<TestFunction> parts{expr()};
            while (peek() == ';') {
                ++pos_;
                parts.push_back(expr());
            }
            expect(')');
            return tf_sum(parts);
        }
        pos_ -= head.size();
        fail(head.empty() ? "expected an expression" : "unknown head \"" + head + "\"");
    }

    TestFunction loggauss_tail() {
        expect(':');
        bool have_a = false, have_mu = false, have_amp = false;
        double a = 0.0, mu = 0.0;
        Complex amp(1.0, 0.0);
        for (;;) {
            std::string key = word();
            expect('=');
            if (key == "a" && !have_a) {
                a = number();
                have_a = true;
            } else if (key == "mu" && !have_mu) {
                mu = number();
                have_mu = true;
            } else if (key == "amp" && !have_amp) {
                amp = complex_value();
                have_amp = true;
            } else {
                pos_ -= key.size() + 1;
                fail("bad or repeated parameter \"" + key + "\"");
            }
            if (peek() == ',' && key_follows(pos_ + 1)) {
                ++pos_;
                continue;
            }
            break;
        }
        if (!have_a || !have_mu) fail("loggauss needs both a= and mu=");
        return log_gaussian(a, mu, amp);
    }

    // <real> optionally followed by (+|-)<real>i
    Complex complex_value() {
        double re = number();
        if (peek() == '+' || peek() == '-') {
            std::size_t mark = pos_;
            double im = number();
            if (peek() == 'i') {
                ++pos_;
                return Complex(re, im);
            }
            pos_ = mark;  // not an imaginary tail; leave it to the caller
        }
        return Complex(re, 0.0);
    }
};

}  // namespace detail

inline TestFunction parse_test_function(const std::string& text) {
    return detail::DslParser(text).run();
}

}  // namespace zsl
