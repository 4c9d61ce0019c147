#ifndef PERMNET_EIGENSOLVER_HPP
#define PERMNET_EIGENSOLVER_HPP

#include <stdexcept>
#include <vector>

namespace permnet {

struct EigensolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenvalues of a dense symmetric n×n matrix (row-major, consumed),
// ascending. Householder tridiagonalization followed by QL iteration with
// implicit shifts, eigenvalues only; convergence tolerance 1e-10 with an
// iteration budget of 50·n. Intended for the small dense Laplacians this
// library works with (hundreds to ~2000 nodes). Throws EigensolverError on
// non-convergence.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace permnet

#endif
