#pragma once

#include "qforms/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qf::reports {

/// Every report carries {"schema": 1, "subcommand": ...}; verdicts,
/// traces and certificates are serialized deterministically (sorted
/// keys, canonical rational strings), so identical requests produce
/// byte-identical output.
inline constexpr int kSchemaVersion = 1;

Json analyze(const QuadraticForm& q);
Json isotropy(const QuadraticForm& q, int height_bound);
Json witt(const QuadraticForm& q);
Json first_witt(const QuadraticForm& q);
Json ruled(const QuadraticForm& q);
Json sphere_ruled(int n);
Json aut_affine(const Polynomial& f, const Field& field, int height_bound, int degree);
Json aut_complement(const QuadraticForm& q, int height_bound);
Json pfister_build(const Field& field, const std::vector<Rational>& params);
Json pfister_multiply(int fold, const std::vector<Rational>& params, bool symbolic);
Json pfister_neighbor(const QuadraticForm& q);
Json pfister_hopf(int fold);
Json map_certificate(int fold, int p1_dim, int r, bool symbolic,
                     const std::vector<Rational>& params,
                     const std::vector<Rational>& scalars);
Json verify_suite(const std::string& suite);

/// Error payload: {"schema":1, "error": {"type","message"}, "exit": code}.
Json error_report(const std::string& type, const std::string& message, int exit_code);
/// Maps an exception to (type, exit code): parse/usage errors exit 1,
/// resource-bound errors (factorization and search limits) exit 2.
Json error_from_exception(const std::exception& e);
int exit_code_of(const Json& report);

}  // namespace qf::reports
