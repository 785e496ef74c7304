#include "asdim/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string_view>
#include <unordered_set>

namespace asdim {

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<int>(w[i]));
  }
  return out;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  const Word& w = e.word();
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<const char*>(w.data()), w.size()));
}

Word alternating_word(GeneratorId s, GeneratorId t, std::size_t length) {
  Word w(length);
  for (std::size_t i = 0; i < length; ++i) w[i] = (i % 2 == 0) ? s : t;
  return w;
}

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(std::size_t rank, std::vector<int> entries)
    : rank_(rank), entries_(std::move(entries)) {}

CoxeterMatrix CoxeterMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<int> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw InvalidArgument("Coxeter matrix must be square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CoxeterMatrix(rows.size(), std::move(flat));
}

std::vector<std::vector<int>> CoxeterMatrix::rows() const {
  std::vector<std::vector<int>> out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    out[i].assign(entries_.begin() + static_cast<long>(i * rank_),
                  entries_.begin() + static_cast<long>((i + 1) * rank_));
  }
  return out;
}

std::string CoxeterMatrix::validation_error() const {
  if (rank_ == 0) return "rank must be positive";
  if (rank_ > kMaxRank) return "rank exceeds " + std::to_string(kMaxRank);
  if (entries_.size() != rank_ * rank_) return "entry count does not match rank";
  for (std::size_t i = 0; i < rank_; ++i) {
    if ((*this)(i, i) != 1) return "diagonal entry m(" + std::to_string(i) + "," + std::to_string(i) + ") != 1";
    for (std::size_t j = 0; j < rank_; ++j) {
      if (i == j) continue;
      const int m = (*this)(i, j);
      if (m != (*this)(j, i)) return "matrix is not symmetric";
      if (m != kInfinity && m < 2) {
        return "off-diagonal entry m(" + std::to_string(i) + "," + std::to_string(j) + ") < 2";
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// CoxeterSystem: construction

namespace {

bool positive_definite(std::vector<double> a, std::size_t n) {
  // Cholesky in place.
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 1e-9) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / d;
    }
  }
  return true;
}

}  // namespace

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix) : matrix_(std::move(matrix)) {
  if (auto err = matrix_.validation_error(); !err.empty()) {
    throw InvalidArgument("invalid Coxeter matrix: " + err);
  }
  const std::size_t n = rank();
  cartan_.assign(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) {
        cartan_[s * n + t] = 2.0;
        continue;
      }
      const int mst = matrix_(s, t);
      if (mst == CoxeterMatrix::kInfinity) {
        cartan_[s * n + t] = -2.0;
      } else if (mst == 2) {
        cartan_[s * n + t] = 0.0;
      } else if (mst == 3) {
        cartan_[s * n + t] = -1.0;
      } else {
        cartan_[s * n + t] = -2.0 * std::cos(std::numbers::pi / mst);
        exact_ = false;
      }
    }
  }

  // Spherical subsets are downward closed; grow them by larger generators.
  std::vector<GeneratorMask> spherical{0};
  for (std::size_t i = 0; i < spherical.size(); ++i) {
    const GeneratorMask base = spherical[i];
    std::size_t start = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (base & (GeneratorMask{1} << s)) start = s + 1;
    }
    for (std::size_t s = start; s < n; ++s) {
      const GeneratorMask next = base | (GeneratorMask{1} << s);
      if (is_spherical(next)) spherical.push_back(next);
    }
  }
  for (GeneratorMask j : spherical) {
    bool maximal = true;
    for (std::size_t s = 0; s < n && maximal; ++s) {
      const GeneratorMask bit = GeneratorMask{1} << s;
      if (!(j & bit) && is_spherical(j | bit)) maximal = false;
    }
    if (maximal) maximal_spherical_.push_back(j);
  }
  std::sort(maximal_spherical_.begin(), maximal_spherical_.end());
}

CoxeterSystem CoxeterSystem::infinite_dihedral() {
  return CoxeterSystem(CoxeterMatrix(2, {1, CoxeterMatrix::kInfinity, CoxeterMatrix::kInfinity, 1}));
}

CoxeterSystem CoxeterSystem::dihedral(int m) { return CoxeterSystem(CoxeterMatrix(2, {1, m, m, 1})); }

CoxeterSystem CoxeterSystem::affine_a2() {
  return CoxeterSystem(CoxeterMatrix(3, {1, 3, 3, 3, 1, 3, 3, 3, 1}));
}

CoxeterSystem CoxeterSystem::product(const CoxeterSystem& first, const CoxeterSystem& second) {
  const std::size_t r1 = first.rank();
  const std::size_t n = r1 + second.rank();
  std::vector<int> e(n * n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        e[i * n + j] = 1;
      } else if (i < r1 && j < r1) {
        e[i * n + j] = first.m(static_cast<GeneratorId>(i), static_cast<GeneratorId>(j));
      } else if (i >= r1 && j >= r1) {
        e[i * n + j] = second.m(static_cast<GeneratorId>(i - r1), static_cast<GeneratorId>(j - r1));
      }
    }
  }
  return CoxeterSystem(CoxeterMatrix(n, std::move(e)));
}

GeneratorMask CoxeterSystem::all_generators() const {
  return rank() == 32 ? ~GeneratorMask{0} : ((GeneratorMask{1} << rank()) - 1);
}

void CoxeterSystem::check_word(const Word& w) const {
  for (GeneratorId s : w) {
    if (s >= rank()) {
      throw InvalidArgument("generator " + std::to_string(static_cast<int>(s)) +
                            " out of range for rank " + std::to_string(rank()));
    }
  }
}

// ---------------------------------------------------------------------------
// Representation

void CoxeterSystem::reflect(GeneratorId s, Vector& v) const {
  const std::size_t n = rank();
  double pairing = 0.0;
  for (std::size_t t = 0; t < n; ++t) pairing += cartan_[s * n + t] * v[t];
  v[s] -= pairing;
}

bool CoxeterSystem::is_negative(const Vector& root) const {
  double best = 0.0;
  for (double c : root) {
    if (std::abs(c) > std::abs(best)) best = c;
  }
  return best < 0.0;
}

CoxeterSystem::Vector CoxeterSystem::root_image(const Element& w, GeneratorId s) const {
  Vector v(rank(), 0.0);
  v[s] = 1.0;
  const Word& word = w.word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) reflect(*it, v);
  return v;
}

CoxeterSystem::Vector CoxeterSystem::apply_inverse(const Element& w, Vector v) const {
  for (GeneratorId s : w.word()) reflect(s, v);
  return v;
}

Element CoxeterSystem::element(const Word& w) const {
  check_word(w);
  const std::size_t n = rank();
  // roots[s] = w^-1(alpha_s); s is a left descent iff it is negative.
  std::vector<Vector> roots(n, Vector(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    roots[s][s] = 1.0;
    for (GeneratorId letter : w) reflect(letter, roots[s]);
  }
  Word canonical;
  canonical.reserve(w.size());
  for (;;) {
    std::size_t pick = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (is_negative(roots[s])) {
        pick = s;
        break;
      }
    }
    if (pick == n) break;
    if (canonical.size() >= w.size()) {
      throw std::logic_error("word reduction did not terminate; representation inconsistent");
    }
    canonical.push_back(static_cast<GeneratorId>(pick));
    // w <- pick * w, so w^-1(alpha_t) <- w^-1(alpha_t - A[pick][t] alpha_pick).
    const Vector pivot = roots[pick];
    for (std::size_t t = 0; t < n; ++t) {
      const double a = cartan_[pick * n + t];
      if (a == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) roots[t][k] -= a * pivot[k];
    }
  }
  return Element(std::move(canonical));
}

Element CoxeterSystem::generator(GeneratorId s) const { return element(Word{s}); }

Element CoxeterSystem::multiply(const Element& a, const Element& b) const {
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return element(w);
}

Element CoxeterSystem::multiply(const Element& a, GeneratorId s) const {
  Word w = a.word();
  w.push_back(s);
  return element(w);
}

Element CoxeterSystem::multiply(GeneratorId s, const Element& a) const {
  Word w;
  w.reserve(a.length() + 1);
  w.push_back(s);
  w.insert(w.end(), a.word().begin(), a.word().end());
  return element(w);
}

Element CoxeterSystem::inverse(const Element& a) const {
  Word w(a.word().rbegin(), a.word().rend());
  return element(w);
}

bool CoxeterSystem::is_left_descent(const Element& w, GeneratorId s) const {
  Vector v(rank(), 0.0);
  v[s] = 1.0;
  return is_negative(apply_inverse(w, std::move(v)));
}

bool CoxeterSystem::is_right_descent(const Element& w, GeneratorId s) const {
  return is_negative(root_image(w, s));
}

std::vector<GeneratorId> CoxeterSystem::left_descents(const Element& w) const {
  std::vector<GeneratorId> out;
  for (std::size_t s = 0; s < rank(); ++s) {
    if (is_left_descent(w, static_cast<GeneratorId>(s))) out.push_back(static_cast<GeneratorId>(s));
  }
  return out;
}

std::vector<GeneratorId> CoxeterSystem::right_descents(const Element& w) const {
  std::vector<GeneratorId> out;
  for (std::size_t s = 0; s < rank(); ++s) {
    if (is_right_descent(w, static_cast<GeneratorId>(s))) out.push_back(static_cast<GeneratorId>(s));
  }
  return out;
}

std::size_t CoxeterSystem::delta_w(const Element& u, const Element& v) const {
  Word w(u.word().rbegin(), u.word().rend());
  w.insert(w.end(), v.word().begin(), v.word().end());
  return element(w).length();
}

// ---------------------------------------------------------------------------
// Reflections and walls

Reflection CoxeterSystem::reflection(const Element& conjugator, GeneratorId s) const {
  Word w = conjugator.word();
  w.push_back(s);
  w.insert(w.end(), conjugator.word().rbegin(), conjugator.word().rend());
  return Reflection{element(w), conjugator, s};
}

bool CoxeterSystem::is_reflection(const Element& t) const {
  Element cur = t;
  for (;;) {
    if (cur.length() == 0) return false;
    if (cur.length() == 1) return true;
    bool shrunk = false;
    for (GeneratorId s : left_descents(cur)) {
      Element next = multiply(multiply(s, cur), s);
      if (next.length() + 2 == cur.length()) {
        cur = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (!shrunk) return false;
  }
}

bool CoxeterSystem::reflection_separates(const Reflection& t, const Element& u, const Element& v) const {
  const bool u_flips = multiply(t.element, u).length() < u.length();
  const bool v_flips = multiply(t.element, v).length() < v.length();
  return u_flips != v_flips;
}

std::vector<Reflection> CoxeterSystem::separating_reflections(const Element& u, const Element& v) const {
  const Element step = multiply(inverse(u), v);
  std::vector<Reflection> out;
  Element cur = u;
  for (GeneratorId s : step.word()) {
    out.push_back(reflection(cur, s));
    cur = multiply(cur, s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Braid moves

Word CoxeterSystem::apply_braid_move(const Word& w, const BraidMove& move) const {
  check_word(w);
  if (move.first == move.other || move.first >= rank() || move.other >= rank()) {
    throw InvalidArgument("braid move needs two distinct generators");
  }
  const int mst = m(move.first, move.other);
  if (mst == CoxeterMatrix::kInfinity || static_cast<std::size_t>(mst) != move.length) {
    throw InvalidArgument("braid move length does not match m(s,t)");
  }
  if (move.position + move.length > w.size()) {
    throw InvalidArgument("braid move runs past the end of the word");
  }
  const Word from = alternating_word(move.first, move.other, move.length);
  if (!std::equal(from.begin(), from.end(), w.begin() + static_cast<long>(move.position))) {
    throw InvalidArgument("braid move does not match the word at position " + std::to_string(move.position));
  }
  Word out = w;
  const Word to = alternating_word(move.other, move.first, move.length);
  std::copy(to.begin(), to.end(), out.begin() + static_cast<long>(move.position));
  return out;
}

namespace {

// Rewrites cur[start..] into target (same element, both reduced), recording moves.
void transform_suffix(const CoxeterSystem& sys, Word& cur, std::size_t start, const Word& target,
                      std::vector<BraidMove>& moves) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    const std::size_t pos = start + i;
    if (cur[pos] == target[i]) continue;
    const GeneratorId s = cur[pos];
    const GeneratorId t = target[i];
    const int mst = sys.m(s, t);
    if (mst == CoxeterMatrix::kInfinity) {
      throw std::logic_error("two left descents generate an infinite dihedral group");
    }
    const auto len = static_cast<std::size_t>(mst);
    // The suffix has a reduced word alt(s,t,m) * rest.
    const Word alt = alternating_word(s, t, len);
    Word probe(alt.rbegin(), alt.rend());
    probe.insert(probe.end(), cur.begin() + static_cast<long>(pos), cur.end());
    const Element rest = sys.element(probe);
    Word inter(alt.begin() + 1, alt.end());
    inter.insert(inter.end(), rest.word().begin(), rest.word().end());
    transform_suffix(sys, cur, pos + 1, inter, moves);
    const BraidMove move{pos, s, t, len};
    cur = sys.apply_braid_move(cur, move);
    moves.push_back(move);
  }
}

}  // namespace

std::vector<BraidMove> CoxeterSystem::braid_move_sequence(const Word& r1, const Word& r2) const {
  if (!is_reduced(r1) || !is_reduced(r2)) {
    throw InvalidArgument("braid_move_sequence needs reduced words");
  }
  const Element e = element(r1);
  if (element(r2) != e) {
    throw InvalidArgument("braid_move_sequence: words represent different elements");
  }
  std::vector<BraidMove> forward;
  Word cur1 = r1;
  transform_suffix(*this, cur1, 0, e.word(), forward);
  std::vector<BraidMove> backward;
  Word cur2 = r2;
  transform_suffix(*this, cur2, 0, e.word(), backward);
  for (auto it = backward.rbegin(); it != backward.rend(); ++it) forward.push_back(it->inverse());
  return forward;
}

std::vector<Word> CoxeterSystem::reduced_words(const Element& w, std::size_t cap) const {
  struct WordHash {
    std::size_t operator()(const Word& x) const noexcept {
      return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(x.data()), x.size()));
    }
  };
  std::vector<Word> out{w.word()};
  std::unordered_set<Word, WordHash> seen{w.word()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Word cur = out[i];
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      for (std::size_t t = 0; t < rank(); ++t) {
        const GeneratorId s = cur[pos];
        if (t == s) continue;
        const int mst = m(s, static_cast<GeneratorId>(t));
        if (mst == CoxeterMatrix::kInfinity) continue;
        const BraidMove move{pos, s, static_cast<GeneratorId>(t), static_cast<std::size_t>(mst)};
        if (pos + move.length > cur.size()) continue;
        const Word alt = alternating_word(s, move.other, move.length);
        if (!std::equal(alt.begin(), alt.end(), cur.begin() + static_cast<long>(pos))) continue;
        Word next = apply_braid_move(cur, move);
        if (seen.insert(next).second) {
          if (out.size() >= cap) throw ResourceLimit("reduced_words: cap exceeded");
          out.push_back(std::move(next));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration, hulls, gates

std::vector<Element> CoxeterSystem::ball(const Element& center, std::size_t radius, std::size_t cap) const {
  std::vector<Element> out{center};
  std::vector<std::size_t> depth{0};
  std::unordered_set<Element, ElementHash> seen{center};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (depth[i] == radius) continue;
    for (std::size_t s = 0; s < rank(); ++s) {
      Element next = multiply(out[i], static_cast<GeneratorId>(s));
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw ResourceLimit("ball: element cap " + std::to_string(cap) + " exceeded");
        out.push_back(std::move(next));
        depth.push_back(depth[i] + 1);
      }
    }
  }
  return out;
}

std::vector<Element> CoxeterSystem::gallery_hull(const std::vector<Element>& x, std::size_t cap) const {
  if (x.empty()) throw InvalidArgument("gallery_hull of an empty set");
  const std::size_t n = rank();
  std::vector<Element> hull;
  std::unordered_set<Element, ElementHash> in_hull;
  for (const Element& e : x) {
    if (in_hull.insert(e).second) hull.push_back(e);
  }
  // Columns of x^-1 in simple-root coordinates, so x^-1(beta) is a matrix product.
  std::vector<std::vector<Vector>> inverse_action;
  inverse_action.reserve(hull.size());
  for (const Element& e : hull) {
    std::vector<Vector> cols(n);
    for (std::size_t t = 0; t < n; ++t) {
      Vector v(n, 0.0);
      v[t] = 1.0;
      cols[t] = apply_inverse(e, std::move(v));
    }
    inverse_action.push_back(std::move(cols));
  }
  // A neighbour c s of a hull chamber c is outside the hull iff the wall
  // between them has every point of X on c's side.
  Vector image(n);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      Element next = multiply(hull[i], static_cast<GeneratorId>(s));
      if (in_hull.count(next)) continue;
      const Vector beta = root_image(hull[i], static_cast<GeneratorId>(s));
      bool reaches = false;
      for (const auto& cols : inverse_action) {
        std::fill(image.begin(), image.end(), 0.0);
        for (std::size_t t = 0; t < n; ++t) {
          if (beta[t] == 0.0) continue;
          for (std::size_t k = 0; k < n; ++k) image[k] += beta[t] * cols[t][k];
        }
        if (is_negative(image)) {
          reaches = true;
          break;
        }
      }
      if (!reaches) continue;
      if (hull.size() >= cap) throw ResourceLimit("gallery_hull: element cap " + std::to_string(cap) + " exceeded");
      in_hull.insert(next);
      hull.push_back(std::move(next));
    }
  }
  std::sort(hull.begin(), hull.end());
  return hull;
}

GateGallery CoxeterSystem::weak_order_gate(const std::vector<Element>& x) const {
  if (x.empty()) throw InvalidArgument("weak_order_gate of an empty set");
  std::vector<Element> rel = x;  // gate^-1 * x
  GateGallery out;
  for (;;) {
    bool advanced = false;
    for (std::size_t s = 0; s < rank() && !advanced; ++s) {
      const auto g = static_cast<GeneratorId>(s);
      const bool common = std::all_of(rel.begin(), rel.end(), [&](const Element& r) { return is_left_descent(r, g); });
      if (!common) continue;
      out.gallery_word.push_back(g);
      for (Element& r : rel) r = multiply(g, r);
      advanced = true;
    }
    if (!advanced) break;
  }
  out.gate = element(out.gallery_word);
  return out;
}

bool CoxeterSystem::is_spherical(GeneratorMask subset) const {
  std::vector<std::size_t> idx;
  for (std::size_t s = 0; s < rank(); ++s) {
    if (subset & (GeneratorMask{1} << s)) idx.push_back(s);
  }
  const std::size_t k = idx.size();
  std::vector<double> gram(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const int mij = matrix_(idx[i], idx[j]);
      gram[i * k + j] = (i == j) ? 1.0 : (mij == CoxeterMatrix::kInfinity ? -1.0 : -std::cos(std::numbers::pi / mij));
    }
  }
  return positive_definite(std::move(gram), k);
}

std::vector<Element> CoxeterSystem::residue(const Element& w, GeneratorMask subset, std::size_t cap) const {
  std::vector<Element> out{w};
  std::unordered_set<Element, ElementHash> seen{w};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t s = 0; s < rank(); ++s) {
      if (!(subset & (GeneratorMask{1} << s))) continue;
      Element next = multiply(out[i], static_cast<GeneratorId>(s));
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw ResourceLimit("residue: element cap exceeded (non-spherical type?)");
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::vector<Element> CoxeterSystem::thicken(const std::vector<Element>& x, std::size_t cap) const {
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  for (const Element& e : x) {
    for (GeneratorMask j : maximal_spherical_) {
      for (Element& r : residue(e, j, cap)) {
        if (seen.insert(r).second) {
          if (out.size() >= cap) throw ResourceLimit("thicken: element cap exceeded");
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

std::vector<Element> CoxeterSystem::neighborhood(const std::vector<Element>& x) const {
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  for (const Element& e : x) {
    if (seen.insert(e).second) out.push_back(e);
  }
  for (const Element& e : x) {
    for (std::size_t s = 0; s < rank(); ++s) {
      Element next = multiply(e, static_cast<GeneratorId>(s));
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace asdim
