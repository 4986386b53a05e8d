// field_io.hpp
// CLF1 field files: one ASCII header line
//   CLF1 n=<n> dims=<d1,..,dn> origin=<o1,..,on> spacing=<h1,..,hn>
//        components=<2^n> encoding=le-f64
// followed by raw little-endian 64-bit floats, nodes in row-major order (last
// axis fastest) with the 2^n blade coefficients contiguous per node in
// increasing bitmask order, then one mask byte per node (1 = inside).

#pragma once

#include <string>

#include "cliffmoll/field.hpp"

namespace cliffmoll {

void write_field(const CliffordField& f, const std::string& path);

/// Round-trips write_field output bit-exactly. Throws on malformed headers,
/// version mismatch, or truncated payloads; never returns a partial field.
CliffordField read_field(const std::string& path);

}  // namespace cliffmoll
