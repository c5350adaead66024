#include "hptkit/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hptkit/errors.hpp"

namespace hptkit {

int letter_degree(char letter) {
    switch (letter) {
        case 'x': return -1;
        case 's': return 1;
        case 'T': return 0;
        default: throw StructuralError(std::string("unknown letter '") + letter + "'");
    }
}

int word_degree(std::string_view word) {
    int deg = 0;
    for (char c : word) deg += letter_degree(c);
    return deg;
}

bool is_h_letter(char letter) { return letter == 's' || letter == 'T'; }

namespace {

int letter_rank(char c) { return c == 'x' ? 0 : (c == 's' ? 1 : 2); }

bool odd(int n) { return (n % 2) != 0; }

}  // namespace

bool WordLess::operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
    }
    return false;
}

std::optional<Word> normal_form(std::string_view word) {
    Word out;
    out.reserve(word.size());
    std::size_t i = 0;
    while (i < word.size()) {
        const char c = word[i];
        if (c == 'x') {
            out.push_back('x');
            ++i;
            continue;
        }
        if (!is_h_letter(c)) throw StructuralError(std::string("unknown letter '") + c + "'");
        std::size_t taus = 0;
        std::size_t esses = 0;
        while (i < word.size() && is_h_letter(word[i])) {
            (word[i] == 'T' ? taus : esses)++;
            ++i;
        }
        if (esses > 1) return std::nullopt;
        out.append(taus, 'T');
        out.append(esses, 's');
    }
    return out;
}

bool is_normal(std::string_view word) {
    const auto nf = normal_form(word);
    return nf && *nf == word;
}

void RewriteLog::record(RewriteStep step) {
    (std::string_view(step.rule) == "ss→0" ? square : commute)++;
    if (steps.size() < keep) steps.push_back(std::move(step));
}

std::optional<Word> reduce_traced(std::string_view word, RewriteLog* log) {
    Word w(word);
    while (true) {
        std::size_t pos = Word::npos;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == 's' && (w[i + 1] == 'T' || w[i + 1] == 's')) {
                pos = i;
                break;
            }
        }
        if (pos == Word::npos) return w;
        if (w[pos + 1] == 's') {
            if (log) log->record({"ss→0", pos, w, std::nullopt});
            return std::nullopt;
        }
        Word next = w;
        std::swap(next[pos], next[pos + 1]);
        if (log) log->record({"sτ→τs", pos, w, next});
        w = std::move(next);
    }
}

std::vector<std::optional<Word>> all_reductions(std::string_view word) {
    std::set<Word> seen{Word(word)};
    std::vector<Word> stack{Word(word)};
    std::set<Word> irreducible;
    bool reaches_zero = false;
    while (!stack.empty()) {
        const Word w = stack.back();
        stack.pop_back();
        bool reducible = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] != 's') continue;
            if (w[i + 1] == 's') {
                reducible = true;
                reaches_zero = true;
            } else if (w[i + 1] == 'T') {
                reducible = true;
                Word next = w;
                std::swap(next[i], next[i + 1]);
                if (seen.insert(next).second) stack.push_back(std::move(next));
            }
        }
        if (!reducible) irreducible.insert(w);
    }
    std::vector<std::optional<Word>> out(irreducible.begin(), irreducible.end());
    if (reaches_zero) out.push_back(std::nullopt);
    return out;
}

// ---------------------------------------------------------------------------

FreeElement::FreeElement(const Scalar& constant) {
    if (!hptkit::is_zero(constant)) terms_.emplace(Word{}, constant);
}

FreeElement FreeElement::word(std::string_view w, const Scalar& coeff) {
    FreeElement out;
    if (auto nf = normal_form(w)) out.add_term(*nf, coeff);
    return out;
}

Scalar FreeElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::optional<int> FreeElement::degree() const {
    std::optional<int> deg;
    for (const auto& [w, c] : terms_) {
        const int d = word_degree(w);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::map<int, FreeElement> FreeElement::homogeneous_parts() const {
    std::map<int, FreeElement> parts;
    for (const auto& [w, c] : terms_) parts[word_degree(w)].terms_.emplace(w, c);
    return parts;
}

std::size_t FreeElement::max_length() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

std::optional<std::size_t> FreeElement::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.size();
}

FreeElement FreeElement::truncated(std::size_t length) const {
    FreeElement out;
    for (const auto& [w, c] : terms_) {
        if (w.size() > length) break;
        out.terms_.emplace(w, c);
    }
    return out;
}

void FreeElement::add_term(const Word& w, const Scalar& c) {
    if (hptkit::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (hptkit::is_zero(it->second)) terms_.erase(it);
    }
}

FreeElement& FreeElement::operator+=(const FreeElement& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

FreeElement& FreeElement::operator*=(const Scalar& c) {
    if (hptkit::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
FreeElement operator-(FreeElement a) { return a *= Scalar(-1); }
FreeElement operator*(const Scalar& c, FreeElement a) { return a *= c; }

FreeElement nf_multiply(const FreeElement& a, const FreeElement& b, std::optional<std::size_t> max_length,
                        RewriteLog* log) {
    FreeElement out;
    for (const auto& [wa, ca] : a.terms()) {
        if (max_length && wa.size() > *max_length) break;
        for (const auto& [wb, cb] : b.terms()) {
            if (max_length && wa.size() + wb.size() > *max_length) break;
            const Word joined = wa + wb;
            const auto nf = log ? reduce_traced(joined, log) : normal_form(joined);
            if (nf) out.add_term(*nf, ca * cb);
        }
    }
    return out;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) { return nf_multiply(a, b); }

namespace {

// Leibniz expansion of `word` letter by letter; each summand is reduced.
void leibniz(std::string_view word, const Scalar& coeff, FreeElement& out, RewriteLog* log) {
    int prefix_degree = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const char c = word[i];
        const Scalar sign = odd(prefix_degree) ? -coeff : coeff;
        Word image;
        Scalar factor = sign;
        if (c == 'x') {
            image = "xx";
            factor = -sign;
        } else if (c == 's') {
            image = "T";
        }
        if (!image.empty()) {
            Word w;
            w.reserve(word.size() + 1);
            w.append(word.substr(0, i));
            w.append(image);
            w.append(word.substr(i + 1));
            const auto nf = log ? reduce_traced(w, log) : normal_form(w);
            if (nf) out.add_term(*nf, factor);
        }
        prefix_degree += letter_degree(c);
    }
}

}  // namespace

FreeElement apply_differential(const FreeElement& a, RewriteLog* log) {
    FreeElement out;
    for (const auto& [w, c] : a.terms()) leibniz(w, c, out, log);
    return out;
}

FreeElement differential_of_raw_word(std::string_view word) {
    FreeElement out;
    leibniz(word, 1, out, nullptr);
    return out;
}

FreeElement commutator_with_x(const FreeElement& a) {
    const FreeElement x = elem_x();
    FreeElement out;
    for (const auto& [deg, part] : a.homogeneous_parts()) {
        out += x * part;
        if (odd(deg)) {
            out += part * x;
        } else {
            out -= part * x;
        }
    }
    return out;
}

FreeElement twist_differential(const FreeElement& a) { return apply_differential(a) + commutator_with_x(a); }

FreeElement elem_x() { return FreeElement::word("x"); }
FreeElement elem_s() { return FreeElement::word("s"); }
FreeElement elem_tau() { return FreeElement::word("T"); }
FreeElement elem_t() { return FreeElement(1) - elem_tau(); }
FreeElement elem_u() { return FreeElement::word("sx"); }
FreeElement elem_v() { return FreeElement::word("xs"); }

// ---------------------------------------------------------------------------
// Text form

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += '.';
        out += (w[i] == 'T') ? "tau" : std::string(1, w[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string to_string(const FreeElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : a.terms()) {
        const bool negative = sgn(c) < 0;
        const Scalar mag = abs(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (w.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += word_to_string(w);
        } else {
            out += to_string(mag) + "*" + word_to_string(w);
        }
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    FreeElement parse() {
        FreeElement e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("column " + std::to_string(pos_ + 1), msg);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FreeElement expr() {
        FreeElement out;
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        while (true) {
            FreeElement t = term();
            if (negate) {
                out -= t;
            } else {
                out += t;
            }
            if (accept('+')) {
                negate = false;
            } else if (accept('-')) {
                negate = true;
            } else {
                return out;
            }
        }
    }

    FreeElement term() {
        FreeElement out = atom();
        while (accept('.') || accept('*')) out = out * atom();
        return out;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    FreeElement power(FreeElement base) {
        if (!accept('^')) return base;
        skip();
        const std::string n = digits();
        if (n.empty()) fail("expected an exponent");
        if (n.size() > 3) fail("exponent too large");
        FreeElement out(1);
        for (int k = std::stoi(n); k > 0; --k) out = out * base;
        return out;
    }

    FreeElement atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            FreeElement inner = expr();
            if (!accept(')')) fail("expected ')'");
            return power(std::move(inner));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            std::string num = digits();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                const std::string den = digits();
                num += "/" + den;
            }
            return FreeElement(parse_scalar(num, "column " + std::to_string(start + 1)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            FreeElement g;
            if (name == "x") {
                g = elem_x();
            } else if (name == "s") {
                g = elem_s();
            } else if (name == "tau") {
                g = elem_tau();
            } else if (name == "t") {
                g = elem_t();
            } else if (name == "u") {
                g = elem_u();
            } else if (name == "v") {
                g = elem_v();
            } else {
                pos_ = start;
                fail("unknown generator '" + std::string(name) + "'");
            }
            return power(std::move(g));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

FreeElement parse_element(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Free product blocks

std::vector<Block> split_blocks(std::string_view word) {
    std::vector<Block> blocks;
    for (char c : word) {
        const bool h = is_h_letter(c);
        if (blocks.empty() || blocks.back().from_h != h) blocks.push_back({h, {}});
        blocks.back().letters.push_back(c);
    }
    return blocks;
}

std::string ComponentKey::name() const {
    return "T^" + std::to_string(n) + (starts_with_h ? "(IH,IP)" : "(IP,IH)");
}

FreeElement FreeProductComponents::sum() const {
    FreeElement out(scalar);
    for (const auto& [key, part] : parts) out += part;
    return out;
}

FreeProductComponents decompose_free_product(const FreeElement& a) {
    FreeProductComponents out{a.constant_term(), {}};
    for (const auto& [w, c] : a.terms()) {
        if (w.empty()) continue;
        const auto blocks = split_blocks(w);
        out.parts[{blocks.front().from_h, blocks.size()}].add_term(w, c);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first generation of normal words: s may not follow s within an ℋ-run and
// τ may not follow s.
void grow_normal(Word& w, bool run_has_s, std::size_t max_length, std::vector<Word>& out) {
    out.push_back(w);
    if (w.size() == max_length) return;
    w.push_back('x');
    grow_normal(w, false, max_length, out);
    w.back() = 's';
    if (!run_has_s) grow_normal(w, true, max_length, out);
    w.back() = 'T';
    if (w.size() < 2 || w[w.size() - 2] != 's') grow_normal(w, run_has_s, max_length, out);
    w.pop_back();
}

void sort_words(std::vector<Word>& words) { std::sort(words.begin(), words.end(), WordLess{}); }

}  // namespace

std::vector<Word> normal_words(std::size_t max_length) {
    std::vector<Word> out;
    Word w;
    grow_normal(w, false, max_length, out);
    sort_words(out);
    return out;
}

std::vector<Word> all_words(std::size_t max_length) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_length; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (char c : {'x', 's', 'T'}) out.push_back(out[i] + c);
        }
        begin = end;
    }
    return out;
}

namespace {

std::string count_detail(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

}  // namespace

Report check_d_squared(std::size_t L) {
    Report report("D squared");
    const auto words = normal_words(L);
    for (const auto& w : words) {
        const FreeElement dd = apply_differential(apply_differential(FreeElement::word(w)));
        if (!dd.is_zero()) {
            report.add("D2", false, "D²(" + word_to_string(w) + ") = " + to_string(dd));
            return report;
        }
    }
    report.add("D2", true, count_detail(words.size(), "words"));
    return report;
}

Report check_confluence(std::size_t L) {
    Report report("normal form uniqueness");
    const auto words = all_words(L);
    for (const auto& w : words) {
        const auto results = all_reductions(w);
        const auto fast = normal_form(w);
        if (results.size() != 1 || results.front() != fast) {
            report.add("confluence", false, word_to_string(w) + " has " + std::to_string(results.size()) +
                                                " distinct reductions");
            return report;
        }
    }
    report.add("confluence", true, count_detail(words.size(), "words"));
    return report;
}

Report check_augmentation(std::size_t L) {
    Report report("augmentation");
    const auto words = normal_words(L);
    for (const auto& w : words) {
        const Scalar e = apply_differential(FreeElement::word(w)).constant_term();
        if (!hptkit::is_zero(e)) {
            report.add("augmentation", false, "ε(D " + word_to_string(w) + ") = " + to_string(e));
            return report;
        }
    }
    report.add("augmentation", true, count_detail(words.size(), "words"));
    return report;
}

Report check_associativity(std::size_t L) {
    Report report("associativity");
    const auto words = normal_words(L);
    std::size_t checked = 0;
    for (const auto& a : words) {
        const FreeElement ea = FreeElement::word(a);
        for (const auto& b : words) {
            if (a.size() + b.size() > L) break;
            const FreeElement eb = FreeElement::word(b);
            const FreeElement ab = ea * eb;
            for (const auto& c : words) {
                if (a.size() + b.size() + c.size() > L) break;
                const FreeElement ec = FreeElement::word(c);
                ++checked;
                if (ab * ec != ea * (eb * ec)) {
                    report.add("associativity", false,
                               word_to_string(a) + " · " + word_to_string(b) + " · " + word_to_string(c));
                    return report;
                }
            }
        }
    }
    report.add("associativity", true, count_detail(checked, "triples"));
    return report;
}

Report check_differential_relations(std::size_t L) {
    Report report("differential and relations");
    const auto words = all_words(L);
    for (const auto& w : words) {
        const FreeElement raw = differential_of_raw_word(w);
        const FreeElement viaNF = apply_differential(FreeElement::word(w));
        if (raw != viaNF) {
            report.add("relations", false, "D(" + word_to_string(w) + "): " + to_string(raw) + " vs " +
                                               to_string(viaNF));
            return report;
        }
    }
    report.add("relations", true, count_detail(words.size(), "words"));
    return report;
}

Report check_twisted_square(std::size_t L) {
    Report report("twisted differential");
    const auto words = normal_words(L);
    for (const auto& w : words) {
        const FreeElement dd = twist_differential(twist_differential(FreeElement::word(w)));
        if (!dd.is_zero()) {
            report.add("twisted-D2", false, "(Dˣ)²(" + word_to_string(w) + ") = " + to_string(dd));
            return report;
        }
    }
    report.add("twisted-D2", true, count_detail(words.size(), "words"));
    return report;
}

Report check_decomposition(std::size_t L) {
    Report report("free product decomposition");
    const auto words = normal_words(L);
    for (const auto& w : words) {
        const FreeElement e = FreeElement::word(w, 3) + FreeElement(2);
        const auto comps = decompose_free_product(e);
        bool ok = comps.sum() == e;
        for (const auto& [key, part] : comps.parts) {
            for (const auto& [pw, c] : part.terms()) {
                const auto blocks = split_blocks(pw);
                int deg = 0;
                for (const auto& b : blocks) deg += word_degree(b.letters);
                ok = ok && blocks.size() == key.n && blocks.front().from_h == key.starts_with_h &&
                     deg == word_degree(pw);
                for (std::size_t i = 1; i < blocks.size(); ++i) ok = ok && blocks[i].from_h != blocks[i - 1].from_h;
            }
        }
        if (!ok) {
            report.add("decomposition", false, word_to_string(w));
            return report;
        }
    }
    report.add("decomposition", true, count_detail(words.size(), "words"));
    return report;
}

}  // namespace hptkit
