#include "gtbv/words.hpp"

#include <algorithm>
#include <cctype>

#include "gtbv/errors.hpp"

namespace gtbv {

Letter inverse(Letter l) { return Letter{l.edge, !l.inv}; }

Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

Word reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        if (!out.empty() && out.back().edge == l.edge && out.back().inv != l.inv) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = reduce(w);
    while (w.size() >= 2 && w.front().edge == w.back().edge && w.front().inv != w.back().inv) {
        w.erase(w.begin());
        w.pop_back();
        w = reduce(w);
    }
    return w;
}

CyclicWord CyclicWord::canonicalize(const Word& w) {
    CyclicWord cw;
    Word r = cyclic_reduce(w);
    if (r.empty()) return cw;
    Word best = r;
    Word rot = r;
    for (std::size_t i = 1; i < r.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    cw.w_ = best;
    return cw;
}

int CyclicWord::max_power() const {
    const std::size_t n = w_.size();
    if (n == 0) return 0;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = 0; i + d < n && periodic; ++i) {
            if (w_[i] != w_[i + d]) periodic = false;
        }
        if (periodic) return static_cast<int>(n / d);
    }
    return 1;
}

bool sort_wedge(WedgeMonomial& m, int& sign) {
    sign = 1;
    // Insertion sort, counting transpositions of odd generators.
    for (std::size_t i = 1; i < m.size(); ++i) {
        GElem g = m[i];
        std::size_t j = i;
        while (j > 0 && g < m[j - 1]) {
            m[j] = m[j - 1];
            sign = -sign;
            --j;
        }
        m[j] = g;
    }
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        if (m[i] == m[i + 1]) return false;
    }
    return true;
}

FormalSum FormalSum::single(const GElem& g, const Rational& c) {
    FormalSum s;
    s.add(WedgeMonomial{g}, c);
    return s;
}

FormalSum FormalSum::monomial(const WedgeMonomial& m, const Rational& c) {
    FormalSum s;
    s.add(m, c);
    return s;
}

void FormalSum::add(const WedgeMonomial& m, const Rational& c) {
    if (c == 0) return;
    WedgeMonomial key = m;
    int sign = 1;
    if (!sort_wedge(key, sign)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), Rational(sign) * c);
    } else {
        it->second += Rational(sign) * c;
        if (it->second == 0) terms_.erase(it);
    }
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
    FormalSum s = *this;
    for (const auto& [m, c] : o.terms_) s.add(m, c);
    return s;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
    FormalSum s = *this;
    for (const auto& [m, c] : o.terms_) s.add(m, -c);
    return s;
}

FormalSum FormalSum::operator*(const Rational& c) const {
    FormalSum s;
    if (c == 0) return s;
    for (const auto& [m, k] : terms_) s.terms_.emplace(m, k * c);
    return s;
}

FormalSum FormalSum::wedge(const FormalSum& o) const {
    FormalSum s;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            WedgeMonomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            s.add(m, c1 * c2);
        }
    }
    return s;
}

void tensor_add(TensorSum& t, const TensorKey& k, const Rational& c) {
    if (c == 0) return;
    auto it = t.find(k);
    if (it == t.end()) {
        t.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

namespace {

std::vector<std::string> tokenize_word(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '.' || ch == ',' || ch == '*') {
            if (!cur.empty()) tokens.push_back(cur), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

}  // namespace

Word parse_word(const std::string& text, const std::map<std::string, int>& edge_index) {
    Word w;
    std::size_t pos = 0;
    for (const std::string& tok0 : tokenize_word(text)) {
        ++pos;
        if (tok0 == "1") continue;
        std::string tok = tok0;
        bool inv = false;
        if (tok.size() >= 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
            inv = true;
            tok.resize(tok.size() - 3);
        } else if (tok.size() >= 2 && tok.back() == '\'') {
            inv = true;
            tok.pop_back();
        }
        auto it = edge_index.find(tok);
        if (it == edge_index.end()) {
            throw ParseError("unknown edge name '" + tok + "' in word", pos);
        }
        w.push_back(Letter{it->second, inv});
    }
    return w;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& edge_names) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back('.');
        out += edge_names.at(static_cast<std::size_t>(w[i].edge));
        if (w[i].inv) out += "'";
    }
    return out;
}

}  // namespace gtbv
