#pragma once

#include <filesystem>
#include <string>

#include "ffbt/coefficients.hpp"
#include "ffbt/sampling.hpp"
#include "ffbt/transform.hpp"

namespace ffbt {

// Text container shared by fields, kernels and spectra: a JSON object with a
// "header" object followed by the payload. Reals are written with 17
// significant digits so a write/read cycle is bit-exact.

std::string format_real(double v);

std::string field_to_text(const SampledField& field);
SampledField field_from_text(const std::string& text);
void write_field(const std::filesystem::path& path, const SampledField& field);
SampledField read_field(const std::filesystem::path& path);

struct KernelFile {
  KernelKind kind = KernelKind::plain;
  HarmonicIndex idx;
  int K = 0;
  ComplexMatrix values;
};

std::string kernel_file_name(KernelKind kind, HarmonicIndex idx, int K);
void write_kernel_matrix(const std::filesystem::path& path, KernelKind kind, HarmonicIndex idx, int K,
                         const ComplexMatrix& values);
KernelFile read_kernel_matrix(const std::filesystem::path& path);

std::string spectrum_to_text(const Spectrum& spec);
Spectrum spectrum_from_text(const std::string& text);
void write_spectrum(const std::filesystem::path& path, const Spectrum& spec);
Spectrum read_spectrum(const std::filesystem::path& path);

// Whole-file helpers; both throw FormatError on I/O failure.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ffbt
