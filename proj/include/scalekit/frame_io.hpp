// SPDX-License-Identifier: MIT
#pragma once
/// \file frame_io.hpp
/// \brief Frame file formats (JSON and CSV) and small formatting helpers.
///
/// JSON frames: {"n": int, "m": int, "columns": [[...n reals...] x m]}.
/// CSV frames: n rows by m comma-separated columns (the matrix itself).
/// All floats are written with 17 significant digits so that files
/// round-trip bit-exactly.

#include <string>

#include "scalekit/frame.hpp"
#include "scalekit/matrix.hpp"

namespace scalekit::io {

/// Shortest-faithful float formatting (printf %.17g).
std::string fmt17(double x);

/// Reads a whole file. Errors: IoError.
std::string read_text_file(const std::string& path);

/// Writes a whole file. Errors: IoError.
void write_text_file(const std::string& path, const std::string& text);

/// Parses frame text, sniffing JSON (leading '{') vs CSV. Errors: ParseError.
Mat parse_frame_matrix(const std::string& text);

/// Reads and validates a frame file. Errors: IoError, ParseError, plus
/// validate_frame's errors.
UnitNormFrame read_frame(const std::string& path, double tol = 1e-8);

std::string frame_to_json(const UnitNormFrame& f);
std::string frame_to_csv(const UnitNormFrame& f);

}  // namespace scalekit::io
