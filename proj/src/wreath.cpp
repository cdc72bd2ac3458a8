#include "cl3/wreath.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "cl3/error.hpp"

namespace cl3 {

Perm identity_perm(int degree) {
    Perm p(static_cast<std::size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& x, const Perm& y) {
    Perm out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = x[y[i]];
    return out;
}

Perm inverse(const Perm& x) {
    Perm out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[x[i]] = static_cast<std::uint8_t>(i);
    return out;
}

int moved_points(const Perm& x) {
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) n += x[i] != i;
    return n;
}

bool is_involution_or_identity(const Perm& x) { return compose(x, x) == identity_perm(static_cast<int>(x.size())); }

std::string to_cycles(const Perm& x) {
    bool wide = x.size() > 9;
    std::string out;
    std::vector<bool> seen(x.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i] || x[i] == i) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (wide && !first) out += ',';
            out += std::to_string(j + 1);
            first = false;
            j = x[j];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Perm parse_cycles(const std::string& text, int degree) {
    if (degree < 1 || degree > 16) fail(ErrorCode::InvalidArgument, "parse_cycles: degree must be in 1..16");
    Perm result = identity_perm(degree);
    std::size_t i = 0;
    auto bad = [&]() { fail(ErrorCode::ParseError, "cannot parse permutation '" + text + "'"); };
    while (i < text.size()) {
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        if (text[i] != '(') bad();
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) bad();
        std::string body = text.substr(i + 1, close - i - 1);
        i = close + 1;
        std::vector<int> pts;
        if (body.find(',') != std::string::npos) {
            std::size_t s = 0;
            while (s <= body.size()) {
                std::size_t e = body.find(',', s);
                if (e == std::string::npos) e = body.size();
                std::string tok = body.substr(s, e - s);
                if (tok.empty() || tok.find_first_not_of("0123456789 ") != std::string::npos) bad();
                pts.push_back(std::stoi(tok));
                s = e + 1;
            }
        } else {
            for (char ch : body) {
                if (ch == ' ') continue;
                if (ch < '0' || ch > '9') bad();
                pts.push_back(ch - '0');
            }
        }
        std::set<int> distinct(pts.begin(), pts.end());
        if (distinct.size() != pts.size()) bad();
        for (int p : pts)
            if (p < 1 || p > degree) bad();
        if (pts.size() < 2) continue;
        Perm cyc = identity_perm(degree);
        for (std::size_t k = 0; k < pts.size(); ++k)
            cyc[pts[k] - 1] = static_cast<std::uint8_t>(pts[(k + 1) % pts.size()] - 1);
        // cycles written left to right act right to left
        result = compose(result, cyc);
    }
    return result;
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators) : degree_(degree), generators_(std::move(generators)) {
    if (degree < 1 || degree > 16) fail(ErrorCode::InvalidArgument, "PermGroup: degree must be in 1..16");
    for (const Perm& g : generators_) {
        if (static_cast<int>(g.size()) != degree) fail(ErrorCode::InvalidArgument, "PermGroup: generator of wrong degree");
        std::vector<bool> hit(g.size(), false);
        for (auto v : g) {
            if (v >= g.size() || hit[v]) fail(ErrorCode::InvalidArgument, "PermGroup: generator is not a permutation");
            hit[v] = true;
        }
    }
    std::set<Perm> seen{identity_perm(degree)};
    std::deque<Perm> queue{identity_perm(degree)};
    while (!queue.empty()) {
        Perm x = queue.front();
        queue.pop_front();
        for (const Perm& g : generators_) {
            Perm y = compose(g, x);
            if (seen.insert(y).second) queue.push_back(y);
        }
        if (seen.size() > 1u << 20) fail(ErrorCode::Unsupported, "PermGroup: group too large");
    }
    elements_.assign(seen.begin(), seen.end());
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::from_cycles(int degree, const std::vector<std::string>& generators) {
    std::vector<Perm> gens;
    for (const auto& g : generators) gens.push_back(parse_cycles(g, degree));
    return PermGroup(degree, gens);
}

bool PermGroup::contains(const Perm& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

bool PermGroup::is_transitive() const {
    std::vector<bool> hit(degree_, false);
    for (const Perm& g : elements_) hit[g[0]] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool PermGroup::is_two_transitive() const {
    if (degree_ < 2) return true;
    std::set<std::pair<int, int>> images;
    for (const Perm& g : elements_) images.insert({g[0], g[1]});
    return images.size() == static_cast<std::size_t>(degree_ * (degree_ - 1));
}

bool PermGroup::is_two_group() const {
    std::size_t n = elements_.size();
    return (n & (n - 1)) == 0;
}

std::vector<Perm> PermGroup::conjugacy_class(const Perm& x) const {
    std::set<Perm> out;
    for (const Perm& g : elements_) out.insert(compose(compose(g, x), inverse(g)));
    return {out.begin(), out.end()};
}

Perm PermGroup::class_label(const Perm& x) const { return conjugacy_class(x).front(); }

std::vector<Perm> PermGroup::involution_classes() const {
    std::set<Perm> labels;
    for (const Perm& g : elements_)
        if (is_involution_or_identity(g)) labels.insert(class_label(g));
    return {labels.begin(), labels.end()};
}

PermGroup wreath_c2(const PermGroup& H) {
    int d = H.degree();
    if (2 * d > 16) fail(ErrorCode::InvalidArgument, "wreath_c2: degree above 16");
    if (!H.is_transitive()) fail(ErrorCode::InvalidArgument, "wreath_c2: H must be transitive");
    std::vector<Perm> gens;
    Perm t = identity_perm(2 * d);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    for (const Perm& h : H.generators()) {
        Perm lift(2 * d);
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < 2; ++c) lift[2 * b + c] = static_cast<std::uint8_t>(2 * h[b] + c);
        gens.push_back(lift);
    }
    return PermGroup(2 * d, gens);
}

std::vector<std::pair<int, int>> transposition_blocks(const PermGroup& G) {
    std::set<std::pair<int, int>> pairs;
    for (const Perm& g : G.elements()) {
        if (moved_points(g) != 2) continue;
        int i = -1, j = -1;
        for (int k = 0; k < G.degree(); ++k)
            if (g[k] != k) (i < 0 ? i : j) = k;
        pairs.insert({i, j});
    }
    return {pairs.begin(), pairs.end()};
}

bool has_transposition(const PermGroup& G) { return !transposition_blocks(G).empty(); }

namespace {

struct Blocks {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> of_point;
};

Blocks wreath_blocks(const PermGroup& G) {
    if (!G.is_transitive()) fail(ErrorCode::InvalidArgument, "group must be transitive");
    Blocks b;
    b.pairs = transposition_blocks(G);
    if (b.pairs.empty()) fail(ErrorCode::InvalidArgument, "group has no transposition");
    b.of_point.assign(G.degree(), -1);
    for (std::size_t k = 0; k < b.pairs.size(); ++k) {
        for (int p : {b.pairs[k].first, b.pairs[k].second}) {
            if (b.of_point[p] >= 0) fail(ErrorCode::InvalidArgument, "transpositions do not form disjoint blocks");
            b.of_point[p] = static_cast<int>(k);
        }
    }
    if (std::find(b.of_point.begin(), b.of_point.end(), -1) != b.of_point.end())
        fail(ErrorCode::InvalidArgument, "transpositions do not cover every point");
    return b;
}

Perm block_image(const Blocks& b, const Perm& g) {
    Perm out(b.pairs.size());
    for (std::size_t k = 0; k < b.pairs.size(); ++k) {
        int i1 = b.of_point[g[b.pairs[k].first]], i2 = b.of_point[g[b.pairs[k].second]];
        if (i1 != i2) fail(ErrorCode::InvalidArgument, "element does not preserve the blocks");
        out[k] = static_cast<std::uint8_t>(i1);
    }
    return out;
}

void check_signature(const PermGroup& G, const GroupSignature& sigma) {
    for (const Perm& s : sigma) {
        if (static_cast<int>(s.size()) != G.degree() || !G.contains(s))
            fail(ErrorCode::InvalidArgument, "signature class " + to_cycles(s) + " is not in G");
        if (!is_involution_or_identity(s))
            fail(ErrorCode::InvalidArgument, "signature class " + to_cycles(s) + " is not an involution");
    }
}

}  // namespace

PermGroup recover_H(const PermGroup& G) {
    Blocks b = wreath_blocks(G);
    std::vector<Perm> gens;
    for (const Perm& g : G.generators()) {
        Perm h = block_image(b, g);
        if (h != identity_perm(static_cast<int>(b.pairs.size()))) gens.push_back(h);
    }
    return PermGroup(static_cast<int>(b.pairs.size()), gens);
}

u64 normalizer_order(const PermGroup& G) {
    int n = G.degree();
    if (n > 8) fail(ErrorCode::Unsupported, "normalizer_order: brute force limited to degree 8");
    Perm s = identity_perm(n);
    u64 count = 0;
    do {
        Perm si = inverse(s);
        bool ok = true;
        for (const Perm& g : G.generators())
            if (!G.contains(compose(compose(s, g), si))) {
                ok = false;
                break;
            }
        count += ok;
    } while (std::next_permutation(s.begin(), s.end()));
    return count;
}

bool permutation_isomorphic(const PermGroup& A, const PermGroup& B) {
    if (A.degree() != B.degree() || A.order() != B.order()) return false;
    int n = A.degree();
    if (n > 8) fail(ErrorCode::Unsupported, "permutation_isomorphic: brute force limited to degree 8");
    Perm s = identity_perm(n);
    do {
        Perm si = inverse(s);
        bool ok = true;
        for (const Perm& g : A.generators())
            if (!B.contains(compose(compose(s, g), si))) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(s.begin(), s.end()));
    return false;
}

AutRatio aut_ratio(const PermGroup& H) {
    AutRatio r;
    if (2 * H.degree() <= 8) {
        u64 big = normalizer_order(wreath_c2(H));
        u64 small = normalizer_order(H);
        if (big % small != 0) fail(ErrorCode::DataIntegrity, "aut_ratio: normalizer orders do not divide");
        r.value = big / small;
        r.brute_force = true;
    } else {
        r.value = u64{1} << H.degree();
    }
    return r;
}

ArchimedeanData quotient_archimedean(const PermGroup& G, const GroupSignature& sigma) {
    check_signature(G, sigma);
    Blocks b = wreath_blocks(G);
    ArchimedeanData a;
    for (const Perm& s : sigma) {
        Perm h = block_image(b, s);
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (h[k] == k)
                ++a.r1;
            else if (h[k] > k)
                ++a.r2;
        }
    }
    return a;
}

int u_of_signature(const PermGroup& G, const GroupSignature& sigma) {
    check_signature(G, sigma);
    Blocks b = wreath_blocks(G);
    int u = 0;
    for (const Perm& s : sigma) {
        Perm h = block_image(b, s);
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (h[k] == k)
                u += s[b.pairs[k].first] == b.pairs[k].first;  // real place of F split in K
            else if (h[k] > k)
                ++u;  // complex place of F
        }
    }
    return u;
}

u64 m_sigma(const PermGroup& G, const GroupSignature& sigma) {
    check_signature(G, sigma);
    Blocks b = wreath_blocks(G);
    u64 total = 1;
    for (const Perm& s : sigma) {
        Perm h = block_image(b, s);
        std::vector<int> fixed;
        for (std::size_t k = 0; k < h.size(); ++k)
            if (h[k] == k) fixed.push_back(static_cast<int>(k));
        std::vector<Perm> cls = G.conjugacy_class(s);
        u64 count = 0;
        for (u64 mask = 0; mask < (u64{1} << fixed.size()); ++mask) {
            Perm u = identity_perm(G.degree());
            for (std::size_t i = 0; i < fixed.size(); ++i)
                if (mask >> i & 1) std::swap(u[b.pairs[fixed[i]].first], u[b.pairs[fixed[i]].second]);
            if (std::binary_search(cls.begin(), cls.end(), compose(u, s))) ++count;
        }
        total *= count;
    }
    return total;
}

Rational cm_relative_prediction(int u) {
    if (u < 0) fail(ErrorCode::InvalidArgument, "cm_relative_prediction: u must be nonnegative");
    return Rational(1) + Rational::power(3, -u);
}

Rational cm_full_prediction(const PermGroup& G, const GroupSignature& sigma) {
    PermGroup H = recover_H(G);
    // W' is the permutation module of H minus the trivial summand. For a
    // transitive 2-group its constituents have 2-power degrees and 2-power
    // Frobenius orbits, so W' (of odd dimension deg H - 1) is irreducible only
    // when deg H <= 2, which is also when H is 2-transitive.
    if (!H.is_two_transitive())
        fail(ErrorCode::Unsupported, "unsupported; general Brauer decomposition out of scope");
    ArchimedeanData a = quotient_archimedean(G, sigma);
    int u_kf = u_of_signature(G, sigma);
    // F = k when deg H = 1: W' is zero and only the K/F factor remains
    if (H.degree() == 1) return cm_relative_prediction(u_kf);
    int u_fk = a.r1 + a.r2 - static_cast<int>(sigma.size());
    return cm_relative_prediction(u_kf) * cm_relative_prediction(u_fk);
}

PredictionReport predict(const PermGroup& G, const GroupSignature& sigma) {
    PredictionReport r;
    r.u_rel = u_of_signature(G, sigma);
    r.m_sigma = m_sigma(G, sigma);
    r.cm_relative = cm_relative_prediction(r.u_rel);
    r.quotient = quotient_archimedean(G, sigma);
    try {
        r.cm_full = cm_full_prediction(G, sigma);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported) throw;
    }
    return r;
}

PermGroup d4() { return PermGroup::from_cycles(4, {"(1234)", "(24)"}); }

std::vector<SignatureSums> signature_sums(const PermGroup& G) {
    PermGroup H = recover_H(G);
    Blocks b = wreath_blocks(G);
    std::map<Perm, SignatureSums> groups;
    for (const Perm& s : G.involution_classes()) {
        Perm label = H.class_label(block_image(b, s));
        SignatureSums& g = groups[label];
        g.quotient_class = label;
        g.data = quotient_archimedean(G, {s});
        u64 m = m_sigma(G, {s});
        g.sum_m += m;
        g.sum_m_weighted += Rational(static_cast<i64>(m)) * Rational::power(3, -u_of_signature(G, {s}));
    }
    std::vector<SignatureSums> out;
    for (auto& [k, v] : groups) out.push_back(v);
    return out;
}

}  // namespace cl3
