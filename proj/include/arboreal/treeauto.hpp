#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"

namespace arboreal {

using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

/// +1 or -1, from the cycle count.
inline int permutation_sign(const Permutation& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return ((perm.size() - cycles) % 2 == 0) ? 1 : -1;
}

/// Automorphism of the complete ell-ary rooted tree of height n, given by
/// a permutation label at every internal vertex. A vertex at depth k is
/// addressed by its word x_1...x_k, encoded base ell with x_1 most
/// significant. The image of a word is computed letter by letter, each
/// letter permuted by the label at its (source) parent vertex.
class TreeAut {
public:
    TreeAut(std::size_t ell, std::size_t height) : ell_(ell), height_(height) {
        require(ell >= 2, "TreeAut: ell must be >= 2");
        std::size_t count = 1;
        for (std::size_t k = 0; k < height; ++k) {
            labels_.emplace_back(count, identity_permutation(ell));
            require(count <= (std::size_t{1} << 24) / ell, "TreeAut: tree too large");
            count *= ell;
        }
    }

    std::size_t ell() const { return ell_; }
    std::size_t height() const { return height_; }

    std::size_t level_size(std::size_t m) const {
        std::size_t s = 1;
        for (std::size_t k = 0; k < m; ++k) s *= ell_;
        return s;
    }

    const Permutation& label(std::size_t depth, std::size_t vertex) const {
        require(depth < height_ && vertex < level_size(depth), "TreeAut: vertex out of range");
        return labels_[depth][vertex];
    }

    void set_label(std::size_t depth, std::size_t vertex, Permutation perm) {
        require(depth < height_ && vertex < level_size(depth), "TreeAut: vertex out of range");
        require(perm.size() == ell_, "TreeAut: label has wrong size");
        std::vector<bool> hit(ell_, false);
        for (auto v : perm) {
            require(v < ell_ && !hit[v], "TreeAut: label is not a permutation");
            hit[v] = true;
        }
        labels_[depth][vertex] = std::move(perm);
    }

    /// Image of a depth-m vertex.
    std::size_t apply(std::size_t m, std::size_t word) const {
        require(m <= height_ && word < level_size(m), "TreeAut: word out of range");
        std::size_t source_prefix = 0;
        std::size_t image = 0;
        std::size_t weight = level_size(m);
        for (std::size_t k = 0; k < m; ++k) {
            weight /= ell_;
            const std::size_t letter = (word / weight) % ell_;
            image = image * ell_ + labels_[k][source_prefix][letter];
            source_prefix = source_prefix * ell_ + letter;
        }
        return image;
    }

    friend bool operator==(const TreeAut&, const TreeAut&) = default;

private:
    std::size_t ell_;
    std::size_t height_;
    std::vector<std::vector<Permutation>> labels_; ///< labels_[depth][vertex]
};

/// Permutation induced on the ell^m vertices of level m.
inline Permutation leaf_action(const TreeAut& t, std::size_t m) {
    require(m >= 1 && m <= t.height(), "leaf_action: level out of range");
    Permutation perm(t.level_size(m));
    for (std::size_t w = 0; w < perm.size(); ++w) perm[w] = t.apply(m, w);
    return perm;
}

/// (s * t)(w) = s(t(w)); its label at v is s's label at t(v) after t's label at v.
inline TreeAut compose(const TreeAut& s, const TreeAut& t) {
    require(s.ell() == t.ell() && s.height() == t.height(), "compose: shape mismatch");
    TreeAut out(s.ell(), s.height());
    for (std::size_t k = 0; k < s.height(); ++k) {
        for (std::size_t v = 0; v < s.level_size(k); ++v) {
            const auto& tl = t.label(k, v);
            const auto& sl = s.label(k, t.apply(k, v));
            Permutation lab(s.ell());
            for (std::size_t x = 0; x < s.ell(); ++x) lab[x] = sl[tl[x]];
            out.set_label(k, v, std::move(lab));
        }
    }
    return out;
}

/// Component m-1 is the sign of the permutation of level m.
inline std::vector<int> sgn_vector(const TreeAut& t) {
    std::vector<int> out;
    for (std::size_t m = 1; m <= t.height(); ++m) out.push_back(permutation_sign(leaf_action(t, m)));
    return out;
}

/// An automorphism with the given sign vector. A transposition (0 1) at one
/// depth-(m-1) vertex acts on level j >= m as ell^{j-m} transpositions: for
/// even ell it flips only sgn_m, for odd ell it flips sgn_j for every j >= m.
inline TreeAut sign_preimage(std::size_t ell, const std::vector<int>& target) {
    for (int s : target) require(s == 1 || s == -1, "sign_preimage: entries must be +1 or -1");
    TreeAut t(ell, target.size());
    Permutation swap01 = identity_permutation(ell);
    std::swap(swap01[0], swap01[1]);
    int previous = 1;
    for (std::size_t m = 1; m <= target.size(); ++m) {
        const int want = target[m - 1];
        const bool flip = (ell % 2 == 0) ? (want == -1) : (want != previous);
        if (flip) t.set_label(m - 1, 0, swap01);
        previous = want;
    }
    return t;
}

/// Uniformly random labels.
template <class Rng>
TreeAut random_tree_aut(std::size_t ell, std::size_t height, Rng& rng) {
    TreeAut t(ell, height);
    for (std::size_t k = 0; k < height; ++k) {
        for (std::size_t v = 0; v < t.level_size(k); ++v) {
            auto perm = identity_permutation(ell);
            std::shuffle(perm.begin(), perm.end(), rng);
            t.set_label(k, v, std::move(perm));
        }
    }
    return t;
}

/// Word of a depth-m vertex as a digit string (ell <= 10).
inline std::string vertex_word(std::size_t ell, std::size_t m, std::size_t index) {
    require(ell <= 10, "vertex_word: digit words need ell <= 10");
    std::string w(m, '0');
    for (std::size_t k = m; k-- > 0;) {
        w[k] = static_cast<char>('0' + index % ell);
        index /= ell;
    }
    return w;
}

} // namespace arboreal
