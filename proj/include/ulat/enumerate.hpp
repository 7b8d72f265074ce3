#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ulat/linalg.hpp"

namespace ulat {

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An endomorphism of K^n together with the eigenvalues it can have (all of them must lie in K).
struct StableOp {
    Mat A;
    std::vector<Elem> eigenvalues;
};

// <x, y> = x^T G Fr(y), Fr: z -> z^(p^twist). Used to restrict the search to isotropic subspaces.
struct SesquilinearForm {
    Mat G;
    unsigned twist = 0;
};

struct EnumOptions {
    std::size_t target_dim = 0;
    bool all_dims = false;       // collect every stable subspace of dim <= target_dim
    std::uint64_t cap = 1ull << 22;  // maximum number of subspaces visited
    std::optional<SesquilinearForm> isotropic;
};

struct EnumStats {
    std::uint64_t visited = 0;
    std::vector<std::uint64_t> per_dim;
};

// Every subspace of K^n stable under all ops (isotropic for the form, if given), grown one
// simple submodule at a time from 0. Output is sorted by (dim, echelon rows) and duplicate-free.
std::vector<Subspace> enumerate_stable(const Field& K, std::size_t n, const std::vector<StableOp>& ops,
                                       const EnumOptions& opt, EnumStats* stats = nullptr);

// Reference implementation: every subspace of K^n of dimension <= max_dim, by brute force over
// reduced echelon forms, kept if stable. Only for tiny n and K.
std::vector<Subspace> brute_force_stable(const Field& K, std::size_t n, const std::vector<Mat>& ops,
                                         std::size_t max_dim);

Elem pairing(const Field& K, const SesquilinearForm& f, const Vec& x, const Vec& y);

}  // namespace ulat
