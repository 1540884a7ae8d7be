#pragma once

#include <optional>
#include <string>

#include "maxplus/matrix.hpp"

namespace maxplus {

/// One instance: a square matrix and an optional vector.
///
/// Text format: '#' starts a comment; the first token is n; then n rows of n
/// whitespace-separated entries; an optional final line "v:" followed by n
/// entries.  Entries are integers, exact decimals, p/q rationals, or one of
/// "*" / "-inf" for bottom.  parse(serialize(M)) round-trips exactly.
struct InstanceFile {
    Matrix a;
    std::optional<Vector> v;
};

InstanceFile parse_instance(const std::string& text);
Matrix parse_matrix(const std::string& text);  // rejects a trailing vector block

std::string serialize_matrix(const Matrix& a);
std::string serialize_instance(const InstanceFile& inst);

/// Exact scalar token: integer, decimal (converted exactly), p/q, or bottom.
Scalar parse_scalar_token(const std::string& token);
std::string scalar_token(const Scalar& s);  // "*" for bottom

InstanceFile read_instance_file(const std::string& path);

}  // namespace maxplus
