#include "psel/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "psel/error.hpp"

namespace psel {
namespace {

using nlohmann::json;

std::string dim_message(const std::string& id, const char* field, std::size_t expected,
                        std::size_t found) {
  return "record '" + id + "': " + field + " dimension mismatch (expected " +
         std::to_string(expected) + ", found " + std::to_string(found) + ")";
}

void check_finite(const std::vector<double>& v, const std::string& id, const char* field) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw CorpusError("record '" + id + "': non-finite value in " + field + "[" +
                        std::to_string(i) + "]");
    }
  }
}

std::vector<double> read_vector(const json& value, const std::string& where, const char* field) {
  if (!value.is_array()) throw CorpusError(where + ": field '" + field + "' must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& x : value) {
    if (!x.is_number()) {
      throw CorpusError(where + ": field '" + field + "' must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Corpus Corpus::build(std::vector<CorpusRecord> records) {
  Corpus corpus;
  if (!records.empty()) {
    corpus.cwe_dim_ = records.front().cwe.size();
    corpus.acoustic_dim_ = records.front().acoustic.size();
  }
  std::unordered_map<std::string, std::size_t> seen;
  corpus.distances_.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CorpusRecord& r = records[i];
    if (r.id.empty()) throw CorpusError("record #" + std::to_string(i + 1) + ": empty id");
    if (auto [it, inserted] = seen.emplace(r.id, i); !inserted) {
      throw CorpusError("duplicate id '" + r.id + "' (records #" + std::to_string(it->second + 1) +
                        " and #" + std::to_string(i + 1) + ")");
    }
    if (r.cwe.empty()) throw CorpusError("record '" + r.id + "': empty cwe vector");
    if (r.acoustic.empty()) throw CorpusError("record '" + r.id + "': empty acoustic vector");
    if (r.cwe.size() != corpus.cwe_dim_) {
      throw CorpusError(dim_message(r.id, "cwe", corpus.cwe_dim_, r.cwe.size()));
    }
    if (r.acoustic.size() != corpus.acoustic_dim_) {
      throw CorpusError(dim_message(r.id, "acoustic", corpus.acoustic_dim_, r.acoustic.size()));
    }
    check_finite(r.cwe, r.id, "cwe");
    check_finite(r.acoustic, r.id, "acoustic");
    corpus.distances_.push_back(distance_vector(r.tree));
  }
  corpus.records_ = std::move(records);
  return corpus;
}

Corpus Corpus::from_parts(std::vector<CorpusRecord> records, std::vector<DistanceVector> distances,
                          std::size_t cwe_dim, std::size_t acoustic_dim) {
  if (records.size() != distances.size()) {
    throw CorpusError("distance cache size does not match record count");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CorpusRecord& r = records[i];
    if (r.cwe.size() != cwe_dim) throw CorpusError(dim_message(r.id, "cwe", cwe_dim, r.cwe.size()));
    if (r.acoustic.size() != acoustic_dim) {
      throw CorpusError(dim_message(r.id, "acoustic", acoustic_dim, r.acoustic.size()));
    }
    if (distances[i].size() != leaf_count(r.tree)) {
      throw CorpusError("record '" + r.id + "': cached distance vector length does not match tree");
    }
  }
  Corpus corpus;
  corpus.records_ = std::move(records);
  corpus.distances_ = std::move(distances);
  corpus.cwe_dim_ = cwe_dim;
  corpus.acoustic_dim_ = acoustic_dim;
  return corpus;
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].id == id) return i;
  }
  return std::nullopt;
}

Corpus ingest_stream(std::istream& in, const std::string& source_name) {
  std::vector<CorpusRecord> records;
  std::unordered_map<std::string, std::size_t> line_of;
  std::size_t cwe_dim = 0, acoustic_dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw CorpusError(where + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw CorpusError(where + ": expected a JSON object");
    for (const char* field : {"id", "text", "tree", "cwe", "acoustic"}) {
      if (!obj.contains(field)) throw CorpusError(where + ": missing field '" + field + "'");
    }
    if (obj.size() != 5) {
      for (const auto& [key, _] : obj.items()) {
        if (key != "id" && key != "text" && key != "tree" && key != "cwe" && key != "acoustic") {
          throw CorpusError(where + ": unexpected field '" + key + "'");
        }
      }
    }
    for (const char* field : {"id", "text", "tree"}) {
      if (!obj[field].is_string()) throw CorpusError(where + ": field '" + field + "' must be a string");
    }

    CorpusRecord r;
    r.id = obj["id"].get<std::string>();
    if (r.id.empty()) throw CorpusError(where + ": empty id");
    if (auto [it, inserted] = line_of.emplace(r.id, line_no); !inserted) {
      throw CorpusError("duplicate id '" + r.id + "' on lines " + std::to_string(it->second) +
                        " and " + std::to_string(line_no) + " of " + source_name);
    }
    const std::string rwhere = where + " (record '" + r.id + "')";
    r.text = obj["text"].get<std::string>();
    try {
      r.tree = parse_tree(obj["tree"].get<std::string>());
    } catch (const ParseError& e) {
      throw CorpusError(rwhere + ": unparseable tree: " + e.what());
    }
    r.cwe = read_vector(obj["cwe"], rwhere, "cwe");
    r.acoustic = read_vector(obj["acoustic"], rwhere, "acoustic");
    if (records.empty()) {
      cwe_dim = r.cwe.size();
      acoustic_dim = r.acoustic.size();
    }
    if (r.cwe.size() != cwe_dim) {
      throw CorpusError(where + ": " + dim_message(r.id, "cwe", cwe_dim, r.cwe.size()));
    }
    if (r.acoustic.size() != acoustic_dim) {
      throw CorpusError(where + ": " + dim_message(r.id, "acoustic", acoustic_dim, r.acoustic.size()));
    }
    check_finite(r.cwe, r.id, "cwe");
    check_finite(r.acoustic, r.id, "acoustic");
    records.push_back(std::move(r));
  }
  if (in.bad()) throw CorpusError(source_name + ": read error");
  return Corpus::build(std::move(records));
}

Corpus ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file '" + path.string() + "'");
  return ingest_stream(in, path.string());
}

}  // namespace psel
