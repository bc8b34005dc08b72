#include "fps/json_io.hpp"

#include <fstream>
#include <sstream>

namespace fps {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member: ") + key);
  return j.at(key);
}

std::string string_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) bad(std::string("expected a string for: ") + key);
  return v.get<std::string>();
}

}  // namespace

json index_json(const IndexSpace& space, const Index& x) {
  if (!space.is_monoid()) return json(std::get<std::uint64_t>(x));
  const Word& w = std::get<Word>(x);
  std::string text = space.index_text(x);
  // compact form only when it decodes back to the same word
  if (space.parse_word(text) == w) return json(text);
  json arr = json::array();
  for (std::uint32_t id : w.letters) arr.push_back(space.alphabet()[id]);
  return arr;
}

Index read_index(const IndexSpace& space, const json& j) {
  if (!space.is_monoid()) {
    if (j.is_number_unsigned()) return Index{j.get<std::uint64_t>()};
    // in-memory documents may carry nonnegative signed integers
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
      return Index{static_cast<std::uint64_t>(j.get<std::int64_t>())};
    bad("expected a natural index");
  }
  if (j.is_string()) return Index{space.parse_word(j.get<std::string>())};
  if (j.is_array()) {
    Word w;
    for (const json& s : j) {
      if (!s.is_string()) bad("expected a symbol string in a word array");
      auto id = space.letter_id(s.get<std::string>());
      if (!id) bad("unknown symbol: " + s.get<std::string>());
      w.letters.push_back(*id);
    }
    return Index{std::move(w)};
  }
  bad("expected a word index");
}

json space_json(const IndexSpace& space) {
  if (!space.is_monoid()) return json("naturals");
  json alpha = json::array();
  for (const std::string& s : space.alphabet()) alpha.push_back(s);
  return json{{"alphabet", std::move(alpha)}};
}

IndexSpace read_space(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "naturals") return IndexSpace::naturals();
    bad("unknown space: " + j.get<std::string>());
  }
  if (j.is_object() && j.contains("alphabet")) {
    const json& a = j.at("alphabet");
    std::vector<std::string> symbols;
    if (a.is_string()) {
      for (char c : a.get<std::string>()) symbols.emplace_back(1, c);
    } else if (a.is_array()) {
      for (const json& s : a) {
        if (!s.is_string()) bad("alphabet symbols must be strings");
        symbols.push_back(s.get<std::string>());
      }
    } else {
      bad("malformed alphabet");
    }
    try {
      return IndexSpace::free_monoid(std::move(symbols));
    } catch (const EvalError& e) {
      bad(e.what());
    }
  }
  bad("malformed space");
}

json polynomial_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [x, c] : p.terms())
    terms.push_back(json{{"index", index_json(p.space(), x)}, {"coeff", scalar_text(c)}});
  return json{{"field", field_name(p.field())}, {"terms", std::move(terms)}};
}

Polynomial read_polynomial(const json& j, const IndexSpace& space) {
  FieldKind field = parse_field_name(string_member(j, "field"));
  const json& terms = member(j, "terms");
  if (!terms.is_array()) bad("terms must be an array");
  std::vector<Polynomial::Term> out;
  for (const json& t : terms) {
    Index x = read_index(space, member(t, "index"));
    FieldValue c = parse_scalar(string_member(t, "coeff"), field);
    out.emplace_back(std::move(x), std::move(c));
  }
  try {
    return Polynomial::from_terms(space, field, std::move(out));
  } catch (const EvalError& e) {
    bad(e.what());
  }
}

json matrix_json(const RowFiniteMatrix& m, const std::vector<Index>& rows) {
  json out{{"source", space_json(m.source())},
           {"target", space_json(m.target())},
           {"field", field_name(m.field())}};
  json rs = json::array();
  for (const Index& y : rows) {
    const RowEntries& r = m.row(y);
    if (r.empty()) continue;
    json entries = json::array();
    for (const auto& [x, c] : r)
      entries.push_back(json{{"x", index_json(m.source(), x)}, {"coeff", scalar_text(c)}});
    rs.push_back(json{{"y", index_json(m.target(), y)}, {"entries", std::move(entries)}});
  }
  out["rows"] = std::move(rs);
  return out;
}

RowFiniteMatrix read_matrix(const json& j) {
  IndexSpace src = read_space(member(j, "source"));
  IndexSpace tgt = read_space(member(j, "target"));
  FieldKind field = parse_field_name(string_member(j, "field"));
  const json& rows = member(j, "rows");
  if (!rows.is_array()) bad("rows must be an array");
  std::map<Index, RowEntries, IndexLess> table;
  for (const json& r : rows) {
    Index y = read_index(tgt, member(r, "y"));
    const json& entries = member(r, "entries");
    if (!entries.is_array()) bad("entries must be an array");
    RowEntries row;
    for (const json& e : entries) {
      Index x = read_index(src, member(e, "x"));
      FieldValue c = parse_scalar(string_member(e, "coeff"), field);
      if (c.is_zero()) continue;
      row.emplace_back(std::move(x), std::move(c));
    }
    if (row.empty()) continue;
    if (!table.emplace(std::move(y), std::move(row)).second) bad("duplicate row index");
  }
  try {
    return RowFiniteMatrix::from_rows(std::move(src), std::move(tgt), field, std::move(table));
  } catch (const EvalError& e) {
    bad(e.what());
  }
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

}  // namespace fps
