#pragma once

// Free graded algebra on x (degree −1), s (degree 1) and τ (degree 0) modulo
// s² = 0 and sτ = τs. Contains ℋ (s, τ), 𝒫 (x) and their free product 𝒜.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hptkit/report.hpp"
#include "hptkit/scalar.hpp"

namespace hptkit {

/// Letters: 'x', 's', and 'T' for τ.
using Word = std::string;

int letter_degree(char letter);
int word_degree(std::string_view word);
bool is_h_letter(char letter);

/// Shortlex order with x < s < τ.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const;
};

/// Normal form: every maximal run of s/τ letters becomes τ^a s^b; the word is zero
/// (nullopt) when some run holds two or more s.
std::optional<Word> normal_form(std::string_view word);
bool is_normal(std::string_view word);

/// One application of a rewrite rule at `position`.
struct RewriteStep {
    const char* rule;  // "sτ→τs" or "ss→0"
    std::size_t position;
    Word before;
    std::optional<Word> after;
};

/// Collects rewrite steps. Every step is counted; only the first `keep` are stored.
struct RewriteLog {
    std::size_t commute = 0;
    std::size_t square = 0;
    std::size_t keep = 32;
    std::vector<RewriteStep> steps;

    void record(RewriteStep step);
};

/// Reduces by repeatedly rewriting the leftmost redex and logs every step.
std::optional<Word> reduce_traced(std::string_view word, RewriteLog* log);

/// All irreducible results reachable from `word` under every rule order
/// (nullopt stands for zero).
std::vector<std::optional<Word>> all_reductions(std::string_view word);

/// Finite linear combination of normal-form words with nonzero rational coefficients.
class FreeElement {
public:
    using Terms = std::map<Word, Scalar, WordLess>;

    FreeElement() = default;
    FreeElement(const Scalar& constant);  // NOLINT: scalars embed as multiples of 1
    /// Coefficient times the normal form of `word` (zero if it reduces to 0).
    static FreeElement word(std::string_view word, const Scalar& coeff = 1);
    static FreeElement generator(char letter) { return word(std::string(1, letter)); }

    const Terms& terms() const noexcept { return terms_; }
    Scalar coeff(const Word& w) const;
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Augmentation ε: the coefficient of the empty word.
    Scalar constant_term() const { return coeff(Word{}); }
    /// Degree of every term, if they all agree (nullopt for zero or mixed degrees).
    std::optional<int> degree() const;
    std::map<int, FreeElement> homogeneous_parts() const;
    std::size_t max_length() const;
    /// Shortest word length present; nullopt for zero.
    std::optional<std::size_t> valuation() const;
    /// Drops every word longer than `length`.
    FreeElement truncated(std::size_t length) const;

    /// Adds `c` times the (already normal) word `w`.
    void add_term(const Word& w, const Scalar& c);

    FreeElement& operator+=(const FreeElement& other);
    FreeElement& operator-=(const FreeElement& other);
    FreeElement& operator*=(const Scalar& c);

    friend bool operator==(const FreeElement& a, const FreeElement& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

FreeElement operator+(FreeElement a, const FreeElement& b);
FreeElement operator-(FreeElement a, const FreeElement& b);
FreeElement operator-(FreeElement a);
FreeElement operator*(const Scalar& c, FreeElement a);

/// Product in normal form. With `max_length`, words longer than it are dropped before
/// reduction (reduction never changes length).
FreeElement nf_multiply(const FreeElement& a, const FreeElement& b, std::optional<std::size_t> max_length = std::nullopt,
                        RewriteLog* log = nullptr);
FreeElement operator*(const FreeElement& a, const FreeElement& b);

/// Graded Leibniz differential with Dx = −x², Ds = τ, Dτ = 0.
FreeElement apply_differential(const FreeElement& a, RewriteLog* log = nullptr);
/// Leibniz expansion on an arbitrary (not necessarily normal) word, then reduced.
FreeElement differential_of_raw_word(std::string_view word);
/// Graded commutator [x, a] = xa − (−1)^{|a|} ax, taken per homogeneous part.
FreeElement commutator_with_x(const FreeElement& a);
/// Dˣ(a) = Da + [x, a].
FreeElement twist_differential(const FreeElement& a);

/// Convenience constructors: u = sx, v = xs, t = 1 − τ.
FreeElement elem_x();
FreeElement elem_s();
FreeElement elem_tau();
FreeElement elem_t();
FreeElement elem_u();
FreeElement elem_v();

/// Text form such as "3/2*x.s.tau - tau^2". Generators x, s, tau and the sugar
/// t = 1 − tau, u = s.x, v = x.s; "." and "*" both multiply; parentheses group.
FreeElement parse_element(std::string_view text);
std::string to_string(const FreeElement& a);
std::string word_to_string(const Word& w);

// ---------------------------------------------------------------------------
// Free product 𝒜 = 𝒫 ∗ ℋ

/// Maximal run of letters from one factor: 𝒫 (x only) or ℋ (s, τ).
struct Block {
    bool from_h;
    Word letters;
};

std::vector<Block> split_blocks(std::string_view word);

/// Component key: T^n(I𝒫, Iℋ) when the first block is from 𝒫, T^n(Iℋ, I𝒫) otherwise.
struct ComponentKey {
    bool starts_with_h;
    std::size_t n;
    auto operator<=>(const ComponentKey&) const = default;
    std::string name() const;
};

struct FreeProductComponents {
    Scalar scalar;
    std::map<ComponentKey, FreeElement> parts;

    FreeElement sum() const;
};

FreeProductComponents decompose_free_product(const FreeElement& a);

// ---------------------------------------------------------------------------
// Enumeration and bounded-length checks

/// Every normal-form word of letter length ≤ `max_length`, in shortlex order.
std::vector<Word> normal_words(std::size_t max_length);
/// Every word (normal or not) of length ≤ `max_length`.
std::vector<Word> all_words(std::size_t max_length);

/// "D2": D² = 0 on every normal word of length ≤ L.
Report check_d_squared(std::size_t L);
/// "confluence": every rule order gives the same result on words of length ≤ L.
Report check_confluence(std::size_t L);
/// "augmentation": ε∘D = 0 on normal words of length ≤ L.
Report check_augmentation(std::size_t L);
/// "associativity": (ab)c = a(bc) on normal-word triples with total length ≤ L.
Report check_associativity(std::size_t L);
/// "relations": D of a raw word reduces to D of its normal form (length ≤ L).
Report check_differential_relations(std::size_t L);
/// "twisted-D2": (Dˣ)² = 0 on normal words of length ≤ L.
Report check_twisted_square(std::size_t L);
/// "decomposition": components sum back and carry the right block counts (length ≤ L).
Report check_decomposition(std::size_t L);

// ---------------------------------------------------------------------------
// Degree-zero part 𝒜₀

enum class A0Shape { TauMonomial, P, Q, PQ };
const char* shape_name(A0Shape shape);

struct A0Word {
    Word word;
    A0Shape shape;
    /// A monomial in u, v, τ (letters 'u', 'v', 'T') whose normal form is `word`.
    std::string monomial;
};

struct A0Basis {
    std::vector<A0Word> words;
    /// Rank of the reduction map from all degree-0 words of length ≤ L.
    std::size_t oracle_rank = 0;
};

/// Normal-form degree-0 words of length ≤ L built block by block, each classified
/// against the normal forms of u/v/τ monomials. Throws InvariantViolation when a
/// word has no shape or the count disagrees with the rank oracle.
A0Basis enumerate_A0_basis(std::size_t L);

/// Products of basis monomials up to length L: juxtaposition cases ("ii-…"),
/// vanishing cases ("iii-…"), "iv" (pq)² = 0 and "v" vτʲu = 0 for j ≤ max(4, L − 4).
Report check_A0_products(std::size_t L);

}  // namespace hptkit
