#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asdim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when an enumeration would exceed its configured element/chamber cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

using GeneratorId = std::uint8_t;
using Word = std::vector<GeneratorId>;

/// Bitmask over generators; bit s set means s is in the subset.
using GeneratorMask = std::uint32_t;

inline constexpr std::size_t kMaxRank = 32;
inline constexpr std::size_t kDefaultElementCap = 1'000'000;

std::string word_to_string(const Word& w);

/// A group element, stored as its ShortLex-minimal reduced word.
///
/// Only CoxeterSystem produces Elements, so two Elements of the same system
/// are equal iff their canonical words are identical.
class Element {
 public:
  Element() = default;

  const Word& word() const { return canonical_; }
  std::size_t length() const { return canonical_.size(); }
  bool is_identity() const { return canonical_.empty(); }

  friend bool operator==(const Element&, const Element&) = default;
  // ShortLex, which is also the order of the canonical words.
  friend bool operator<(const Element& a, const Element& b) {
    if (a.canonical_.size() != b.canonical_.size()) {
      return a.canonical_.size() < b.canonical_.size();
    }
    return a.canonical_ < b.canonical_;
  }

 private:
  friend class CoxeterSystem;
  explicit Element(Word w) : canonical_(std::move(w)) {}
  Word canonical_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Symmetric Coxeter matrix. Off-diagonal 0 encodes m = infinity.
class CoxeterMatrix {
 public:
  static constexpr int kInfinity = 0;

  CoxeterMatrix() = default;
  CoxeterMatrix(std::size_t rank, std::vector<int> entries);
  static CoxeterMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rank() const { return rank_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }
  const std::vector<int>& entries() const { return entries_; }
  std::vector<std::vector<int>> rows() const;

  /// Empty string when the matrix is a valid Coxeter matrix, else the reason.
  std::string validation_error() const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<int> entries_;
};

/// One Tits move: the alternating subword of length m(first, other) starting
/// at `position` with letter `first` is replaced by the one starting with `other`.
struct BraidMove {
  std::size_t position = 0;
  GeneratorId first = 0;
  GeneratorId other = 0;
  std::size_t length = 0;

  BraidMove inverse() const { return {position, other, first, length}; }
  friend bool operator==(const BraidMove&, const BraidMove&) = default;
};

/// A conjugate w s w^-1 of a generator, remembered with one conjugating pair.
struct Reflection {
  Element element;
  Element conjugator;
  GeneratorId generator = 0;
};

struct GateGallery {
  Word gallery_word;
  Element gate;
};

/// A finitely generated Coxeter system (W, S) with a complete word-problem
/// solution.
///
/// Descent tests use the Tits representation on the span of simple roots:
/// s is a left descent of w iff w^-1(alpha_s) is a negative root. For
/// m(s,t) in {2,3,4,6,inf} the Cartan entries are integers, so all
/// arithmetic is exact in double precision up to 2^53; other m fall back
/// to 2cos(pi/m) and the sign of a root is read off its largest coordinate.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix);

  static CoxeterSystem infinite_dihedral();
  static CoxeterSystem dihedral(int m);
  static CoxeterSystem affine_a2();
  /// Block-diagonal system of W1 x W2; generators of the second factor are
  /// shifted by rank(first).
  static CoxeterSystem product(const CoxeterSystem& first, const CoxeterSystem& second);

  const CoxeterMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rank(); }
  int m(GeneratorId s, GeneratorId t) const { return matrix_(s, t); }
  bool commute(GeneratorId s, GeneratorId t) const { return s == t || m(s, t) == 2; }
  GeneratorMask all_generators() const;

  void check_word(const Word& w) const;

  Element element(const Word& w) const;
  Element identity() const { return Element{}; }
  Element generator(GeneratorId s) const;
  Word reduce(const Word& w) const { return element(w).word(); }
  std::size_t length(const Word& w) const { return element(w).length(); }
  bool is_reduced(const Word& w) const { return length(w) == w.size(); }
  bool elements_equal(const Word& a, const Word& b) const { return element(a) == element(b); }

  Element multiply(const Element& a, const Element& b) const;
  Element multiply(const Element& a, GeneratorId s) const;
  Element multiply(GeneratorId s, const Element& a) const;
  Element inverse(const Element& a) const;

  bool is_left_descent(const Element& w, GeneratorId s) const;
  bool is_right_descent(const Element& w, GeneratorId s) const;
  std::vector<GeneratorId> left_descents(const Element& w) const;
  std::vector<GeneratorId> right_descents(const Element& w) const;

  /// Gallery distance in the Coxeter complex: l(u^-1 v).
  std::size_t delta_w(const Element& u, const Element& v) const;

  Reflection reflection(const Element& conjugator, GeneratorId s) const;
  bool is_reflection(const Element& t) const;
  /// True iff the wall of t separates chambers u and v.
  bool reflection_separates(const Reflection& t, const Element& u, const Element& v) const;
  /// Reflections crossed by a minimal gallery from u to v (the walls separating them).
  std::vector<Reflection> separating_reflections(const Element& u, const Element& v) const;

  /// Tits moves turning reduced r1 into reduced r2 (same element).
  std::vector<BraidMove> braid_move_sequence(const Word& r1, const Word& r2) const;
  /// Applies a move; throws InvalidArgument if it does not fit the word.
  Word apply_braid_move(const Word& w, const BraidMove& move) const;
  /// Every reduced word of w, by braid-move saturation. Exponential; tests only.
  std::vector<Word> reduced_words(const Element& w, std::size_t cap = 100'000) const;

  /// Elements at distance <= radius from center, in breadth-first order.
  std::vector<Element> ball(const Element& center, std::size_t radius,
                            std::size_t cap = kDefaultElementCap) const;
  /// Chambers not separated from all of X by a single wall.
  std::vector<Element> gallery_hull(const std::vector<Element>& x,
                                    std::size_t cap = kDefaultElementCap) const;
  GateGallery weak_order_gate(const std::vector<Element>& x) const;

  bool is_spherical(GeneratorMask subset) const;
  /// Inclusion-maximal spherical subsets, in increasing mask order.
  const std::vector<GeneratorMask>& maximal_spherical_subsets() const { return maximal_spherical_; }
  /// The coset w W_J, breadth-first from w.
  std::vector<Element> residue(const Element& w, GeneratorMask subset,
                               std::size_t cap = kDefaultElementCap) const;
  /// Union of the maximal spherical residues of the members of X.
  std::vector<Element> thicken(const std::vector<Element>& x,
                               std::size_t cap = kDefaultElementCap) const;
  /// X together with all its neighbours w s.
  std::vector<Element> neighborhood(const std::vector<Element>& x) const;

  // Low-level access to the representation, shared with hull computations.
  using Vector = std::vector<double>;
  /// w(alpha_s) in simple-root coordinates.
  Vector root_image(const Element& w, GeneratorId s) const;
  /// Coordinates of w^-1(v) for the given v.
  Vector apply_inverse(const Element& w, Vector v) const;
  bool is_negative(const Vector& root) const;

 private:
  void reflect(GeneratorId s, Vector& v) const;

  CoxeterMatrix matrix_;
  std::vector<double> cartan_;  // rank x rank, cartan_[s*rank+t] = <alpha_s^vee, alpha_t>
  bool exact_ = true;
  std::vector<GeneratorMask> maximal_spherical_;
};

/// Alternating word s t s ... of the given length.
Word alternating_word(GeneratorId s, GeneratorId t, std::size_t length);

}  // namespace asdim
