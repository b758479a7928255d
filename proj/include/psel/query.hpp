#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psel/similarity.hpp"

namespace psel {

// A test sentence as read from a query file. Same schema as a corpus line,
// except that "acoustic" is absent (ignored if present) and "tree"/"cwe" are
// each optional; at least one of them must be given.
struct Query {
  std::string id;  // may be empty
  std::string text;
  SentenceRepr repr;
};

// Throws CorpusError with `where` in the message.
Query query_from_json(const nlohmann::json& obj, const std::string& where);

// One query object per non-blank line.
std::vector<Query> load_queries(std::istream& in, const std::string& source_name = "<stream>");
std::vector<Query> load_queries(const std::filesystem::path& path);

// A JSON array of query objects (one paragraph) or an array of such arrays.
std::vector<std::vector<Query>> load_paragraphs(std::istream& in,
                                                const std::string& source_name = "<stream>");
std::vector<std::vector<Query>> load_paragraphs(const std::filesystem::path& path);

}  // namespace psel
