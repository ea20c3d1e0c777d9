#pragma once
// Field serialization. Binary layout (little-endian):
//   magic "AFLD1\n", u32 naxes, per axis { u8 id, f64 lo, f64 hi, u32 n },
//   u8 deps mask, u64 sample count, f64 samples (row-major over dep axes,
//   canonical axis order, last axis fastest).
// CSV: '#' header lines carrying the same metadata, then one sample per line
// printed with 17 significant digits (lossless double round-trip).

#include <filesystem>

#include "afcdm/field.hpp"

namespace afcdm {

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_field_binary(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field_binary(const std::filesystem::path& path);

void write_field_csv(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field_csv(const std::filesystem::path& path);

// dispatch on extension (.fld binary, .csv text)
void write_field(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace afcdm
