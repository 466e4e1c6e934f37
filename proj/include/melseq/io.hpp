#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit, hex digest; used for manifest input/output hashes.
uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);
std::string file_hash(const std::filesystem::path& path);

// Plain-integers corpus format: one raw label per line.
void write_sequence_file(const std::filesystem::path& path,
                         const std::vector<int>& raw_labels);

std::string alphabet_to_json(const Alphabet& alphabet);
Alphabet alphabet_from_json(const std::string& text);

// Corpus/sequence artifact directory: sequence.txt + alphabet.json.
void write_sequence_artifact(const std::filesystem::path& dir,
                             const PitchSequence& seq);
PitchSequence read_sequence_artifact(const std::filesystem::path& dir);

}  // namespace melseq
