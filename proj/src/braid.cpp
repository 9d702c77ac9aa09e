#include "kpos/braid.hpp"

#include <cctype>
#include <cstdlib>

#include "kpos/error.hpp"
#include "union_find.hpp"

namespace kpos {

std::string BraidWord::to_string() const {
  std::string out = "strands=" + std::to_string(strands) + ";";
  for (int l : letters) out += " " + std::to_string(l);
  return out;
}

BraidWord make_braid(std::vector<int> letters, int strands) {
  if (strands < 1) throw Error(Errc::MalformedBraid, "strand count must be at least 1");
  for (int l : letters) {
    if (l == 0) throw Error(Errc::ZeroLetter, "braid letter 0");
    if (std::abs(l) >= strands)
      throw Error(Errc::GeneratorOutOfRange,
                  "generator " + std::to_string(l) + " needs more than " + std::to_string(strands) + " strands");
  }
  return BraidWord{std::move(letters), strands};
}

BraidWord parse_braid(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(Errc::MalformedBraid, "expected 'strands=<n>; letters'");
  std::string head;
  for (char ch : text.substr(0, semi))
    if (!std::isspace(static_cast<unsigned char>(ch))) head.push_back(ch);
  if (head.rfind("strands=", 0) != 0) throw Error(Errc::MalformedBraid, "expected 'strands=<n>'");
  const std::string count = head.substr(8);
  if (count.empty() || count.size() > 6 || count.find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::MalformedBraid, "bad strand count '" + count + "'");
  const int strands = std::stoi(count);

  std::vector<int> letters;
  std::string tok;
  const auto flush = [&] {
    if (tok.empty()) return;
    const bool neg = tok[0] == '-';
    const std::string digits = (neg || tok[0] == '+') ? tok.substr(1) : tok;
    if (digits.empty() || digits.size() > 6 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::MalformedBraid, "bad letter '" + tok + "'");
    const int v = std::stoi(digits);
    letters.push_back(neg ? -v : v);
    tok.clear();
  };
  for (char ch : text.substr(semi + 1)) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      flush();
    } else {
      tok.push_back(ch);
    }
  }
  flush();
  return make_braid(std::move(letters), strands);
}

Diagram braid_closure(const BraidWord& word) {
  const BraidWord b = make_braid(word.letters, word.strands);
  // Strands move upward. Arc ids: 0..n-1 enter at the bottom; each crossing adds two.
  std::vector<int> current(static_cast<std::size_t>(b.strands));
  for (int p = 0; p < b.strands; ++p) current[p] = p;
  int next_id = b.strands;
  std::vector<PDTuple> xs;
  std::vector<int> signs;
  std::vector<bool> touched(static_cast<std::size_t>(b.strands), false);
  for (int letter : b.letters) {
    const int i = std::abs(letter) - 1;  // positions i and i+1
    const int bl = current[i], br = current[i + 1];
    const int tl = next_id++, tr = next_id++;
    // Positive: over-strand bottom-left -> top-right. Tuples list the arcs clockwise.
    if (letter > 0) {
      xs.push_back({br, bl, tl, tr});
      signs.push_back(1);
    } else {
      xs.push_back({bl, tl, tr, br});
      signs.push_back(-1);
    }
    current[i] = tl;
    current[i + 1] = tr;
    touched[i] = touched[i + 1] = true;
  }
  detail::UnionFind uf(static_cast<std::size_t>(next_id));
  int free_circles = 0;
  for (int p = 0; p < b.strands; ++p) {
    if (!touched[p]) {
      ++free_circles;
      continue;
    }
    uf.unite(current[p], p);
  }
  std::vector<PDTuple> closed;
  for (const auto& t : xs) closed.push_back({uf.find(t[0]), uf.find(t[1]), uf.find(t[2]), uf.find(t[3])});
  return Diagram::from_oriented(std::move(closed), std::move(signs), free_circles);
}

}  // namespace kpos
