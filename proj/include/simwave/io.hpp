// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_IO_H
#define SIMWAVE_IO_H

#include <cstdint>
#include <string>

#include "simwave/types.hpp"

namespace simwave
{

// Binary complex-matrix dump for cross-language comparison: an 8-field header
// of little-endian uint64 (magic "SIMWMATX", version, rows, cols, 4 reserved)
// followed by the entries row-major as interleaved little-endian float64
// (real, imag).
inline constexpr std::uint64_t matrix_dump_magic = 0x5853494D574D4154ULL; // "SIMWMATX"
inline constexpr std::uint64_t matrix_dump_version = 1;

void write_matrix_dump(const std::string& path, const cmat& matrix);
cmat read_matrix_dump(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace simwave

#endif
