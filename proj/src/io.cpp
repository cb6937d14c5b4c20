// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace simwave
{

static_assert(std::endian::native == std::endian::little,
              "matrix dumps are defined little-endian; byte swapping not implemented");

void write_matrix_dump(const std::string& path, const cmat& matrix)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_matrix_dump: cannot open '" + path + "'");

    const std::uint64_t header[8] = {matrix_dump_magic,
                                     matrix_dump_version,
                                     static_cast<std::uint64_t>(matrix.rows()),
                                     static_cast<std::uint64_t>(matrix.cols()),
                                     0, 0, 0, 0};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));

    std::vector<double> row(2 * matrix.cols());
    for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c)
        {
            row[2 * c] = matrix(r, c).real();
            row[2 * c + 1] = matrix(r, c).imag();
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
    if (!out)
        throw std::runtime_error("write_matrix_dump: write failed for '" + path + "'");
}

cmat read_matrix_dump(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_matrix_dump: cannot open '" + path + "'");

    std::uint64_t header[8];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || header[0] != matrix_dump_magic)
        throw std::runtime_error("read_matrix_dump: bad magic in '" + path + "'");
    if (header[1] != matrix_dump_version)
        throw std::runtime_error("read_matrix_dump: unsupported version");

    const auto rows = static_cast<Eigen::Index>(header[2]);
    const auto cols = static_cast<Eigen::Index>(header[3]);
    cmat matrix(rows, cols);
    std::vector<double> row(2 * cols);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
        if (!in)
            throw std::runtime_error("read_matrix_dump: truncated file '" + path + "'");
        for (Eigen::Index c = 0; c < cols; ++c)
            matrix(r, c) = cx(row[2 * c], row[2 * c + 1]);
    }
    return matrix;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_text_file: cannot open '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("write_text_file: write failed for '" + path + "'");
}

} // namespace simwave
