#ifndef CL3_WREATH_HPP
#define CL3_WREATH_HPP

// Permutation 2-groups, wreath products C2 wr H, group signatures and the
// Cohen-Martinet predictions for 3-torsion averages.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cl3/rational.hpp"

namespace cl3 {

/// Images of 0..n-1.
using Perm = std::vector<std::uint8_t>;

Perm identity_perm(int degree);
Perm compose(const Perm& x, const Perm& y);  // x after y
Perm inverse(const Perm& x);
int moved_points(const Perm& x);
bool is_involution_or_identity(const Perm& x);

/// Cycle notation with 1-based points, e.g. "(13)(24)"; "()" for the identity.
/// Points above 9 are written with commas: "(1,10)".
std::string to_cycles(const Perm& x);
Perm parse_cycles(const std::string& text, int degree);

class PermGroup {
public:
    /// Closure of the generators; degree <= 16.
    PermGroup(int degree, std::vector<Perm> generators);
    static PermGroup trivial(int degree = 1);
    static PermGroup from_cycles(int degree, const std::vector<std::string>& generators);

    int degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return generators_; }
    bool contains(const Perm& x) const;
    bool is_transitive() const;
    bool is_two_transitive() const;
    bool is_two_group() const;

    /// Lexicographically minimal element of the conjugacy class of x.
    Perm class_label(const Perm& x) const;
    std::vector<Perm> conjugacy_class(const Perm& x) const;
    /// Labels of the classes of elements of order <= 2, sorted.
    std::vector<Perm> involution_classes() const;

private:
    int degree_;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;  // sorted
};

/// C2 wr H on {0,1} x B_H, point (b, c) numbered 2b + c.
PermGroup wreath_c2(const PermGroup& H);
bool has_transposition(const PermGroup& G);
/// The blocks are the pairs swapped by transpositions of G; H is the action on blocks.
PermGroup recover_H(const PermGroup& G);
/// Pairs {i, j} (i < j) interchanged by transpositions of G, ordered by i.
std::vector<std::pair<int, int>> transposition_blocks(const PermGroup& G);

/// |N_{S_n}(G)| by brute force; n <= 8.
u64 normalizer_order(const PermGroup& G);
bool permutation_isomorphic(const PermGroup& A, const PermGroup& B);

/// |Aut_perm(C2 wr H)| / |Aut_perm(H)|; brute force when the wreath product has
/// degree <= 8, otherwise the block formula 2^{deg H}.
struct AutRatio {
    u64 value = 0;
    bool brute_force = false;
};
AutRatio aut_ratio(const PermGroup& H);

/// A group signature over a totally real base: one class of G per real place.
using GroupSignature = std::vector<Perm>;

struct ArchimedeanData {
    int r1 = 0;  // real places of F
    int r2 = 0;  // complex places of F
};

/// Archimedean data of F implied by the image of sigma in H.
ArchimedeanData quotient_archimedean(const PermGroup& G, const GroupSignature& sigma);
/// Relative unit rank of K/F.
int u_of_signature(const PermGroup& G, const GroupSignature& sigma);
/// Product over places of #{u supported on fixed blocks : u sigma ~ sigma}.
u64 m_sigma(const PermGroup& G, const GroupSignature& sigma);

Rational cm_relative_prediction(int u);
/// (1 + 3^{-u(K/F)}) (1 + 3^{-u(F/k)}); requires W' irreducible, which for a
/// transitive 2-group H happens exactly when deg H <= 2.
Rational cm_full_prediction(const PermGroup& G, const GroupSignature& sigma);

struct PredictionReport {
    int u_rel = 0;
    u64 m_sigma = 0;
    Rational cm_relative;
    std::optional<Rational> cm_full;
    ArchimedeanData quotient;
};
PredictionReport predict(const PermGroup& G, const GroupSignature& sigma);

/// D4 = <(1234), (24)> as labelled in the comparison table.
PermGroup d4();

/// Every conjugacy class sigma of order <= 2 in G (one real place), with
/// the image class in H, grouped for the summation identities.
struct SignatureSums {
    Perm quotient_class;
    ArchimedeanData data;
    u64 sum_m = 0;
    Rational sum_m_weighted;
};
std::vector<SignatureSums> signature_sums(const PermGroup& G);

}  // namespace cl3

#endif
