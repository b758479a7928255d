#include "psel/query.hpp"

#include <cmath>
#include <fstream>

#include "psel/error.hpp"

namespace psel {

using nlohmann::json;

Query query_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw CorpusError(where + ": expected a JSON object");
  Query q;
  for (const auto& [key, value] : obj.items()) {
    if (key == "id" || key == "text" || key == "tree") {
      if (!value.is_string()) throw CorpusError(where + ": field '" + key + "' must be a string");
    } else if (key == "cwe") {
      if (!value.is_array()) throw CorpusError(where + ": field 'cwe' must be an array");
    } else if (key != "acoustic") {
      throw CorpusError(where + ": unexpected field '" + key + "'");
    }
  }
  if (obj.contains("id")) q.id = obj["id"].get<std::string>();
  if (obj.contains("text")) q.text = obj["text"].get<std::string>();
  if (obj.contains("tree")) {
    try {
      q.repr.syndist = distance_vector(parse_tree(obj["tree"].get<std::string>()));
    } catch (const ParseError& e) {
      throw CorpusError(where + ": unparseable tree: " + e.what());
    }
  }
  if (obj.contains("cwe")) {
    std::vector<double> cwe;
    for (const auto& x : obj["cwe"]) {
      if (!x.is_number()) throw CorpusError(where + ": field 'cwe' must contain only numbers");
      const double v = x.get<double>();
      if (!std::isfinite(v)) throw CorpusError(where + ": non-finite value in cwe");
      cwe.push_back(v);
    }
    if (cwe.empty()) throw CorpusError(where + ": empty cwe vector");
    q.repr.cwe = std::move(cwe);
  }
  if (!q.repr.cwe && !q.repr.syndist) {
    throw CorpusError(where + ": query needs at least one of 'tree' or 'cwe'");
  }
  return q;
}

std::vector<Query> load_queries(std::istream& in, const std::string& source_name) {
  std::vector<Query> out;
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
    out.push_back(query_from_json(obj, where));
  }
  if (out.empty()) throw CorpusError(source_name + ": no queries");
  return out;
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open query file '" + path.string() + "'");
  return load_queries(in, path.string());
}

std::vector<std::vector<Query>> load_paragraphs(std::istream& in, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw CorpusError(source_name + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_array() || doc.empty()) {
    throw CorpusError(source_name + ": expected a non-empty JSON array");
  }

  auto read_paragraph = [&](const json& arr, std::size_t p) {
    const std::string where = source_name + ": paragraph " + std::to_string(p + 1);
    if (!arr.is_array() || arr.empty()) throw CorpusError(where + ": expected a non-empty array");
    std::vector<Query> out;
    for (std::size_t s = 0; s < arr.size(); ++s) {
      out.push_back(query_from_json(arr[s], where + ", sentence " + std::to_string(s + 1)));
    }
    return out;
  };

  std::vector<std::vector<Query>> paragraphs;
  if (doc.front().is_array()) {
    for (std::size_t p = 0; p < doc.size(); ++p) paragraphs.push_back(read_paragraph(doc[p], p));
  } else {
    paragraphs.push_back(read_paragraph(doc, 0));
  }
  return paragraphs;
}

std::vector<std::vector<Query>> load_paragraphs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open paragraph file '" + path.string() + "'");
  return load_paragraphs(in, path.string());
}

}  // namespace psel
