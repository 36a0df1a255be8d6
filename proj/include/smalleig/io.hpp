#pragma once

#include <string>

#include "smalleig/driver.hpp"
#include "smalleig/matrix.hpp"

namespace smalleig {

// Matrix file format: {"n": int, "entries": [[re, im], ...]} with n^2
// row-major pairs of finite doubles.
ComplexMatrix parse_matrix_json(const std::string& text);
ComplexMatrix read_matrix_json(const std::string& path);
std::string matrix_to_json_string(const ComplexMatrix& m);
void write_matrix_json(const ComplexMatrix& m, const std::string& path);

std::string report_to_json_string(const EigenReport& report);

// Failure report for CLI error paths (retry/precision refusals).
std::string failure_report_json_string(int n, long required_bits,
                                       const std::string& reason);

}  // namespace smalleig
