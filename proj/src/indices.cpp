#include "fps/indices.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace fps {

Word concat(const Word& u, const Word& v) {
  Word w;
  w.letters.reserve(u.letters.size() + v.letters.size());
  w.letters.insert(w.letters.end(), u.letters.begin(), u.letters.end());
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

Word subword(const Word& w, std::size_t begin, std::size_t end) {
  Word out;
  out.letters.assign(w.letters.begin() + begin, w.letters.begin() + end);
  return out;
}

bool IndexLess::operator()(const Index& a, const Index& b) const {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<std::uint64_t>(a))
    return std::get<std::uint64_t>(a) < std::get<std::uint64_t>(b);
  const auto& u = std::get<Word>(a).letters;
  const auto& v = std::get<Word>(b).letters;
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

std::size_t IndexHash::operator()(const Index& x) const {
  if (std::holds_alternative<std::uint64_t>(x)) {
    std::uint64_t z = std::get<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint32_t c : std::get<Word>(x).letters) {
    h ^= c + 1;
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::vector<std::vector<Word>> factorizations(const Word& w, std::size_t k) {
  std::vector<std::vector<Word>> out;
  if (k == 0) {
    if (length(w) == 0) out.push_back({});
    return out;
  }
  std::vector<Word> parts;
  // choose k-1 cut points (with repetition) in [0, |w|]
  auto rec = [&](auto&& self, std::size_t start, std::size_t left) -> void {
    if (left == 1) {
      parts.push_back(subword(w, start, length(w)));
      out.push_back(parts);
      parts.pop_back();
      return;
    }
    for (std::size_t cut = start; cut <= length(w); ++cut) {
      parts.push_back(subword(w, start, cut));
      self(self, cut, left - 1);
      parts.pop_back();
    }
  };
  rec(rec, 0, k);
  return out;
}

struct IndexSpace::Data {
  SpaceKind kind = SpaceKind::Naturals;
  std::vector<std::string> alphabet;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::uint32_t> by_length;  // symbol ids, longest first, for greedy parsing
};

IndexSpace IndexSpace::naturals() {
  static const auto data = std::make_shared<const Data>();
  return IndexSpace{data};
}

IndexSpace IndexSpace::free_monoid(std::vector<std::string> alphabet) {
  auto d = std::make_shared<Data>();
  d->kind = SpaceKind::FreeMonoid;
  for (std::uint32_t i = 0; i < alphabet.size(); ++i) {
    const std::string& s = alphabet[i];
    if (s.empty()) throw EvalError("empty alphabet symbol");
    if (!d->ids.emplace(s, i).second) throw EvalError("duplicate alphabet symbol: " + s);
    d->by_length.push_back(i);
  }
  d->alphabet = std::move(alphabet);
  std::stable_sort(d->by_length.begin(), d->by_length.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return d->alphabet[a].size() > d->alphabet[b].size();
                   });
  return IndexSpace{std::move(d)};
}

SpaceKind IndexSpace::kind() const { return data_->kind; }

const std::vector<std::string>& IndexSpace::alphabet() const {
  if (!is_monoid()) throw EvalError("naturals space has no alphabet");
  return data_->alphabet;
}

bool IndexSpace::operator==(const IndexSpace& other) const {
  if (data_ == other.data_) return true;
  return data_->kind == other.data_->kind && data_->alphabet == other.data_->alphabet;
}

bool IndexSpace::contains(const Index& x) const {
  if (!is_monoid()) return std::holds_alternative<std::uint64_t>(x);
  if (!std::holds_alternative<Word>(x)) return false;
  for (std::uint32_t id : std::get<Word>(x).letters)
    if (id >= data_->alphabet.size()) return false;
  return true;
}

Index IndexSpace::at(std::uint64_t position) const {
  if (!is_monoid()) return Index{position};
  const std::uint64_t m = data_->alphabet.size();
  if (m == 0) {
    if (position == 0) return Index{Word{}};
    throw EvalError("index position beyond a finite space");
  }
  std::uint64_t pos = position;
  std::size_t len = 0;
  unsigned __int128 block = 1;
  while (pos >= block) {
    pos -= static_cast<std::uint64_t>(block);
    block *= m;
    ++len;
  }
  Word w;
  w.letters.assign(len, 0);
  for (std::size_t i = len; i-- > 0;) {
    w.letters[i] = static_cast<std::uint32_t>(pos % m);
    pos /= m;
  }
  return Index{std::move(w)};
}

std::vector<Index> IndexSpace::enumerate(std::uint64_t n) const {
  std::vector<Index> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (is_monoid() && data_->alphabet.empty() && i > 0) break;
    out.push_back(at(i));
  }
  return out;
}

std::uint64_t IndexSpace::count_up_to_length(std::uint64_t len, std::uint64_t cap) const {
  if (!is_monoid()) throw EvalError("count_up_to_length needs a free monoid");
  const unsigned __int128 m = data_->alphabet.size();
  unsigned __int128 total = 0, block = 1;
  for (std::uint64_t l = 0; l <= len; ++l) {
    total += block;
    if (total >= cap) return cap;
    block *= m == 0 ? 0 : m;
  }
  return static_cast<std::uint64_t>(total);
}

std::string IndexSpace::index_text(const Index& x) const {
  if (!contains(x)) throw EvalError("index does not belong to this space");
  if (!is_monoid()) return std::to_string(std::get<std::uint64_t>(x));
  std::string out;
  for (std::uint32_t id : std::get<Word>(x).letters) out += data_->alphabet[id];
  return out;
}

Index IndexSpace::parse_index(std::string_view text) const {
  if (!is_monoid()) {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
      throw InputError("malformed natural index: " + std::string(text));
    return Index{v};
  }
  return Index{parse_word(text)};
}

Word IndexSpace::parse_word(std::string_view text) const {
  if (!is_monoid()) throw EvalError("word literals need a free monoid");
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    bool matched = false;
    for (std::uint32_t id : data_->by_length) {
      const std::string& sym = data_->alphabet[id];
      if (text.substr(pos, sym.size()) == sym) {
        w.letters.push_back(id);
        pos += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched)
      throw InputError("unknown letter at position " + std::to_string(pos + 1) + " in word: " +
                       std::string(text));
  }
  return w;
}

std::optional<std::uint32_t> IndexSpace::letter_id(std::string_view symbol) const {
  if (!is_monoid()) return std::nullopt;
  auto it = data_->ids.find(std::string(symbol));
  if (it == data_->ids.end()) return std::nullopt;
  return it->second;
}

Word IndexSpace::letter(std::uint32_t id) const {
  if (!is_monoid() || id >= data_->alphabet.size()) throw EvalError("letter id out of range");
  return Word{{id}};
}

}  // namespace fps
