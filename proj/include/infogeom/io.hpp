#pragma once

#include <iosfwd>
#include <string>

#include "infogeom/lindblad.hpp"
#include "infogeom/linalg.hpp"

namespace infogeom {

// Matrix JSON: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
struct MatrixReadResult {
  Mat matrix;
  double hermitize_correction = 0;  // Frobenius norm of the applied symmetrization
};

Mat read_matrix_json(const std::string& text);
// Reader for Hermitian inputs: symmetrizes and records the correction.
MatrixReadResult read_hermitian_json(const std::string& text);
std::string write_matrix_json(const Mat& m);

// Generator JSON: {"H": matrix, "jumps": [matrix...], "rates": [...]} with an
// optional "schedule": [[t, r1, r2, ...], ...] interpolated linearly in t.
Lindbladian read_generator_json(const std::string& text);
std::string write_generator_json(const Lindbladian& lind);

std::string slurp_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

// 17-significant-digit decimal float, the CSV cell format.
std::string format_double(double v);

}  // namespace infogeom
