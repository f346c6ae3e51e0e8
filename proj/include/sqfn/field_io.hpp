#pragma once

#include <string>

#include "sqfn/field.hpp"

namespace sqfn {

// Raw binary format: magic "SQFN", version u32=1, n u32, N u32, L f64,
// then N^n little-endian f64 values in lexicographic axis order.
void write_field_binary(const ScalarField& f, const std::string& path);
ScalarField read_field_binary(const std::string& path);

// CSV: one sample per row "k1,...,kn,value".
void write_field_csv(const ScalarField& f, const std::string& path);

}  // namespace sqfn
