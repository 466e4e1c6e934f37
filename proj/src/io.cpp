#include "melseq/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "melseq/corpus.hpp"
#include "melseq/errors.hpp"

namespace melseq {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw data_error("write failed: " + path.string());
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string file_hash(const fs::path& path) { return hash_hex(read_text_file(path)); }

void write_sequence_file(const fs::path& path, const std::vector<int>& raw_labels) {
  std::string out;
  out.reserve(raw_labels.size() * 4);
  for (int v : raw_labels) {
    out += std::to_string(v);
    out += '\n';
  }
  write_text_file(path, out);
}

std::string alphabet_to_json(const Alphabet& alphabet) {
  nlohmann::json doc;
  doc["symbols"] = alphabet.symbols();
  return doc.dump(2) + "\n";
}

Alphabet alphabet_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  return Alphabet(doc.at("symbols").get<std::vector<int>>());
}

void write_sequence_artifact(const fs::path& dir, const PitchSequence& seq) {
  fs::create_directories(dir);
  write_sequence_file(dir / "sequence.txt", seq.raw_labels());
  write_text_file(dir / "alphabet.json", alphabet_to_json(seq.alphabet));
}

PitchSequence read_sequence_artifact(const fs::path& dir) {
  Alphabet alphabet = alphabet_from_json(read_text_file(dir / "alphabet.json"));
  std::istringstream in(read_text_file(dir / "sequence.txt"));
  PitchSequence loaded = load_corpus(in, CorpusFormat::PlainIntegers);
  // re-map onto the stored alphabet so index order survives round trips
  std::vector<int> data;
  data.reserve(loaded.data.size());
  for (int raw : loaded.raw_labels()) data.push_back(alphabet.index_of(raw));
  return PitchSequence{std::move(data), std::move(alphabet)};
}

}  // namespace melseq
