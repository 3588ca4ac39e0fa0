#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "fibkit/dsl.hpp"

namespace fibkit::dsl {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

struct Field {
  std::string value;
  int line;
  int column_offset; // characters preceding the value on its line
};

using Stanza = std::map<std::string, Field>;

Identity build_identity(const Stanza& st, int first_line) {
  for (const char* key : {"name", "params", "identity"})
    if (!st.count(key))
      throw CatalogError(first_line, std::string("stanza is missing '") + key + "'");
  const Field& idf = st.at("identity");
  std::string tag = st.count("paper") ? st.at("paper").value : "";
  Identity id = parse_identity(idf.value, split_words(st.at("params").value), st.at("name").value, std::move(tag),
                               SourcePos{idf.line, idf.column_offset});
  if (auto it = st.find("expands"); it != st.end()) {
    const auto words = split_words(it->second.value);
    if (words.empty())
      throw CatalogError(it->second.line, "'expands' needs a parent identity name");
    Expansion ex{words[0], {}};
    for (std::size_t i = 1; i < words.size(); ++i) {
      const auto eq = words[i].find('=');
      if (eq == std::string::npos || eq == 0)
        throw CatalogError(it->second.line, "expected binding 'param=expr', got '" + words[i] + "'");
      ex.bindings.emplace_back(words[i].substr(0, eq),
                               parse_expression(words[i].substr(eq + 1), id.params, SourcePos{it->second.line, 0}));
    }
    id.expands = std::move(ex);
  }
  return id;
}

} // namespace

Catalog::Catalog(std::vector<Identity> entries) : entries_(std::move(entries)) {
  std::map<std::string, int> seen;
  for (const auto& e : entries_)
    if (++seen[e.name] > 1)
      throw CatalogError(0, "duplicate identity name '" + e.name + "'");
}

const Identity* Catalog::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name)
      return &e;
  return nullptr;
}

std::vector<const Identity*> Catalog::find_by_tag(std::string_view tag) const {
  std::vector<const Identity*> out;
  for (const auto& e : entries_)
    if (e.paper_tag == tag)
      out.push_back(&e);
  return out;
}

Catalog parse_catalog(std::string_view text) {
  std::vector<Identity> entries;
  std::map<std::string, int> names;
  Stanza st;
  int stanza_line = 0;
  auto flush = [&] {
    if (st.empty())
      return;
    Identity id = build_identity(st, stanza_line);
    if (names.count(id.name))
      throw CatalogError(stanza_line, "duplicate identity name '" + id.name + "'");
    names[id.name] = stanza_line;
    entries.push_back(std::move(id));
    st.clear();
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#')
      continue;
    const auto colon = raw.find(':');
    if (colon == std::string_view::npos)
      throw CatalogError(line_no, "expected 'key: value'");
    const std::string key(trim(raw.substr(0, colon)));
    if (key != "name" && key != "params" && key != "paper" && key != "identity" && key != "expands")
      throw CatalogError(line_no, "unknown key '" + key + "'");
    if (st.count(key))
      throw CatalogError(line_no, "repeated key '" + key + "'");
    if (st.empty())
      stanza_line = line_no;
    const std::string_view rest = raw.substr(colon + 1);
    const auto lead = rest.find_first_not_of(" \t");
    const std::string_view value = trim(rest);
    const int offset = static_cast<int>(colon + 1 + (lead == std::string_view::npos ? 0 : lead));
    st[key] = Field{std::string(value), line_no, offset};
  }
  flush();
  return Catalog(std::move(entries));
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string print_catalog(const Catalog& catalog) {
  std::string out;
  for (const auto& id : catalog.entries()) {
    if (!out.empty())
      out += "\n";
    out += "name: " + id.name + "\nparams:";
    for (const auto& p : id.params)
      out += " " + p;
    out += "\n";
    if (!id.paper_tag.empty())
      out += "paper: " + id.paper_tag + "\n";
    if (id.expands) {
      out += "expands: " + id.expands->parent;
      for (const auto& [param, e] : id.expands->bindings) {
        std::string text = print(e);
        text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
        out += " " + param + "=" + text;
      }
      out += "\n";
    }
    out += "identity: " + pretty_print(id) + "\n";
  }
  return out;
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = parse_catalog(builtin_catalog_text());
  return catalog;
}

} // namespace fibkit::dsl
