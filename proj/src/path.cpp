#include "carnot/path.hpp"

namespace carnot {

std::vector<Letter> word_of_commutator(int j) {
  if (j < 1) throw Error(ErrorKind::ArityTooSmall, "commutator word of arity " + std::to_string(j));
  if (j == 1) return {Letter{0, 1}};
  std::vector<Letter> inner = word_of_commutator(j - 1);
  for (auto& l : inner) ++l.position;
  std::vector<Letter> out;
  out.reserve(2 * inner.size() + 2);
  out.push_back({0, 1});
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back({0, -1});
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.push_back({it->position, -it->sign});
  return out;
}

}  // namespace carnot
