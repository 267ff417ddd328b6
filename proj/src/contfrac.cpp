#include "brjuno/contfrac.hpp"

#include <stdexcept>

namespace brjuno {

contfrac::contfrac(std::vector<mpz_class> prefix, cf_tail tail)
    : prefix_(std::move(prefix)), tail_(tail) {
    for (const auto& d : prefix_)
        if (d < 1) throw std::invalid_argument("contfrac: digits must be >= 1");
    if (tail_ == cf_tail::all_ones) {
        while (!prefix_.empty() && prefix_.back() == 1) prefix_.pop_back();
    }
    if (tail_ == cf_tail::terminating && prefix_.size() >= 2 && prefix_.back() == 1) {
        // fold a trailing 1 into the previous digit: [.., a, 1] = [.., a+1];
        // keeps the Gauss orbit of the value and the digit list in agreement
        prefix_.pop_back();
        prefix_.back() += 1;
    }
    if (tail_ == cf_tail::terminating && prefix_.empty())
        throw std::invalid_argument("contfrac: terminating expansion needs >= 1 digit");
}

contfrac contfrac::from_rational(const mpq_class& x) {
    if (x <= 0 || x > 1) throw std::invalid_argument("contfrac: need x in (0, 1]");
    std::vector<mpz_class> digits;
    // Euclidean algorithm on 1/x; produces the canonical expansion
    mpz_class num = x.get_den(), den = x.get_num(); // value num/den = 1/x >= 1
    while (den != 0) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        digits.push_back(q);
        num = den;
        den = r;
    }
    return contfrac(std::move(digits), cf_tail::terminating);
}

mpz_class contfrac::digit(size_t i) const {
    if (i == 0) throw std::out_of_range("contfrac: digits are 1-based");
    if (i <= prefix_.size()) return prefix_[i - 1];
    if (tail_ == cf_tail::all_ones) return 1;
    throw std::out_of_range("contfrac: digit index past the expansion");
}

bool contfrac::has_digit(size_t i) const {
    return i >= 1 && (i <= prefix_.size() || tail_ == cf_tail::all_ones);
}

contfrac contfrac::truncated_all_ones(size_t n) const {
    std::vector<mpz_class> d;
    d.reserve(n);
    for (size_t i = 1; i <= n; ++i) d.push_back(digit(i));
    return contfrac(std::move(d), cf_tail::all_ones);
}

contfrac contfrac::with_inserted_digit(size_t m, const mpz_class& big) const {
    if (tail_ != cf_tail::all_ones)
        throw std::invalid_argument("contfrac: insertion needs an all-ones tail");
    if (m < 1) throw std::invalid_argument("contfrac: insertion depth m >= 1");
    if (big < 1) throw std::invalid_argument("contfrac: inserted digit must be >= 1");
    std::vector<mpz_class> d = prefix_;
    d.reserve(prefix_.size() + m);
    for (size_t i = 0; i + 1 < m; ++i) d.push_back(1);
    d.push_back(big);
    return contfrac(std::move(d), cf_tail::all_ones);
}

bool contfrac::extends(const contfrac& o) const {
    for (size_t i = 1; i <= o.prefix_len(); ++i) {
        if (!has_digit(i)) return false;
        if (digit(i) != o.digit(i)) return false;
    }
    return true;
}

golden_field contfrac::value_exact() const {
    golden_field x;
    size_t start;
    if (tail_ == cf_tail::all_ones) {
        x = golden_field::golden_tail();
        start = prefix_.size();
    } else if (tail_ == cf_tail::terminating) {
        x = golden_field();
        start = prefix_.size();
    } else {
        throw std::domain_error("contfrac: unspecified tail has no value");
    }
    for (size_t j = start; j >= 1; --j)
        x = (golden_field::rational(mpq_class(prefix_[j - 1])) + x).recip();
    return x;
}

interval contfrac::value(mpfr_prec_t prec) const {
    return value_exact().enclosure(prec);
}

golden_field contfrac::alpha_exact(size_t i) const {
    if (i == 0) throw std::out_of_range("contfrac: alpha is 1-based");
    if (tail_ == cf_tail::unspecified)
        throw std::domain_error("contfrac: unspecified tail has no alpha");
    if (tail_ == cf_tail::terminating && i > prefix_.size())
        throw std::out_of_range("contfrac: alpha index past the expansion");
    golden_field x = tail_ == cf_tail::all_ones ? golden_field::golden_tail()
                                                : golden_field();
    for (size_t j = prefix_.size(); j >= i; --j)
        x = (golden_field::rational(mpq_class(prefix_[j - 1])) + x).recip();
    return x;
}

std::vector<interval> contfrac::alpha_enclosures(size_t count, mpfr_prec_t prec) const {
    if (tail_ == cf_tail::unspecified)
        throw std::domain_error("contfrac: unspecified tail has no alpha");
    if (tail_ == cf_tail::terminating && count > prefix_.size())
        throw std::out_of_range("contfrac: alpha index past the expansion");
    std::vector<interval> out(count, interval(0, prec));
    interval theta = golden_field::golden_tail().enclosure(prec);
    interval x = tail_ == cf_tail::all_ones ? theta : interval(0, prec);
    for (size_t i = count; i > prefix_.size(); --i) out[i - 1] = theta;
    for (size_t j = prefix_.size(); j >= 1; --j) {
        x = (interval::exact(prefix_[j - 1], prec) + x).recip();
        if (j <= count) out[j - 1] = x;
    }
    return out;
}

std::vector<cf_convergent> contfrac::convergents(size_t n) const {
    // p_0 = 0, q_0 = 1, p_{-1} = 1, q_{-1} = 0;
    // p_k = r_k p_{k-1} + p_{k-2}, same for q.
    std::vector<cf_convergent> out;
    out.reserve(n);
    mpz_class pm1 = 1, qm1 = 0, p0 = 0, q0 = 1;
    for (size_t i = 1; i <= n; ++i) {
        mpz_class r = digit(i);
        mpz_class p = r * p0 + pm1;
        mpz_class q = r * q0 + qm1;
        out.push_back({p, q});
        pm1 = p0;
        qm1 = q0;
        p0 = p;
        q0 = q;
    }
    return out;
}

cf_convergent contfrac::convergent(size_t n) const {
    if (n == 0) return {mpz_class(0), mpz_class(1)};
    return convergents(n).back();
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

contfrac contfrac::parse(const std::string& text) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("contfrac: expected [..] notation: " + text);
    s = s.substr(1, s.size() - 2);

    cf_tail tail = cf_tail::terminating;
    auto semi = s.find(';');
    if (semi != std::string::npos) {
        std::string t = trim(s.substr(semi + 1));
        if (t == "ones")
            tail = cf_tail::all_ones;
        else if (t == "any")
            tail = cf_tail::unspecified;
        else
            throw std::invalid_argument("contfrac: unknown tail marker ;" + t);
        s = s.substr(0, semi);
    }

    std::vector<mpz_class> digits;
    if (!trim(s).empty()) {
        std::string cur;
        auto flush = [&](bool last) {
            std::string tok = trim(cur);
            cur.clear();
            if (tok.empty()) throw std::invalid_argument("contfrac: empty digit in " + text);
            if (tok == "\xe2\x80\xa6" || tok == "...") {
                if (!last) throw std::invalid_argument("contfrac: ellipsis before end");
                tail = cf_tail::all_ones;
                return;
            }
            digits.emplace_back(tok, 10);
        };
        for (char c : s) {
            if (c == ',') {
                flush(false);
            } else {
                cur.push_back(c);
            }
        }
        flush(true);
    }
    return contfrac(std::move(digits), tail);
}

std::string contfrac::format() const {
    std::string out = "[";
    for (size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ",";
        out += prefix_[i].get_str();
    }
    if (tail_ == cf_tail::all_ones) out += ";ones";
    if (tail_ == cf_tail::unspecified) out += ";any";
    out += "]";
    return out;
}

} // namespace brjuno
