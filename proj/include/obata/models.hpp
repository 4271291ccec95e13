#pragma once

#include "obata/joyce.hpp"

namespace obata {

/// su(n) in its defining representation, decomposed along the diagonal:
/// layer i sits in rows 2i-2, 2i-1, its f block is the remaining columns of
/// those rows, and b is spanned by nested traceless diagonal matrices
/// E_1..E_b (E_j supported from row 2j-2 on). One central torus direction is
/// adjoined when n is even.
JoyceDecomposition su_model(int n);

/// Compact sp(k): quaternionic anti-Hermitian k x k matrices. Layer i is the
/// imaginary quaternion line at diagonal entry i with f block the row tail;
/// b = 0 and the torus has k directions.
JoyceDecomposition sp_model(int k);

/// R + su(2), the algebra of the Hopf surface S^1 x SU(2).
JoyceDecomposition hopf_model();

}  // namespace obata
