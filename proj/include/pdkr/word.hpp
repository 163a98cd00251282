#ifndef PDKR_WORD_HPP_
#define PDKR_WORD_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdkr/pd_model.hpp"
#include "pdkr/transformation.hpp"

namespace pdkr {

  // A generator name: the step map t, or a reset c<i> / d<i>.
  struct Token {
    enum class Kind : std::uint8_t { step, cooperate, defect };

    Kind kind = Kind::step;
    int  cell = 0;  // 1..6 for resets, 0 for t

    static constexpr Token step() noexcept {
      return Token{Kind::step, 0};
    }
    static constexpr Token cooperate(int cell) noexcept {
      return Token{Kind::cooperate, cell};
    }
    static constexpr Token defect(int cell) noexcept {
      return Token{Kind::defect, cell};
    }

    // t < c1 < d1 < c2 < d2 < ... < c6 < d6
    constexpr int rank() const noexcept {
      return kind == Kind::step ? 0 : 2 * cell - (kind == Kind::cooperate ? 1 : 0);
    }
    constexpr auto operator<=>(Token const& o) const noexcept {
      return rank() <=> o.rank();
    }
    constexpr bool operator==(Token const& o) const noexcept {
      return rank() == o.rank();
    }

    std::string to_string() const;
  };

  Token parse_token(std::string_view text);

  // Applied left to right: the first token acts first.
  using Word = std::vector<Token>;

  // Whitespace separated tokens; errors name the bad token and its position.
  Word        parse_word(std::string_view text);
  std::string to_string(Word const& w);

  // Shortlex on token ranks.
  bool shortlex_less(Word const& a, Word const& b);

  // The generators T_O = {t} u {c_i, d_i : i in O}, kept in token order.
  class GeneratorSet {
   public:
    GeneratorSet() = default;

    // Build t at temptation b plus resets for every open cell.
    GeneratorSet(Rational const& b, std::vector<int> const& open_cells);

    // Arbitrary named maps; sorted into token order, duplicates rejected.
    static GeneratorSet from_pairs(std::vector<std::pair<Token, Transformation>> pairs);

    std::size_t size() const noexcept {
      return _tokens.size();
    }
    bool empty() const noexcept {
      return _tokens.empty();
    }
    Token const& token(std::size_t i) const {
      return _tokens.at(i);
    }
    Transformation const& map(std::size_t i) const {
      return _maps.at(i);
    }
    std::vector<Token> const& tokens() const noexcept {
      return _tokens;
    }
    std::vector<Transformation> const& maps() const noexcept {
      return _maps;
    }

    std::optional<std::size_t> find(Token const& tok) const noexcept;

    // Left-to-right fold of compose; the empty word is the identity.
    // Throws DomainError for tokens outside the set.
    Transformation eval(Word const& w) const;

    // Same, over generator indices.
    Transformation eval_indices(std::vector<std::uint8_t> const& w) const;
    Word           word_of(std::vector<std::uint8_t> const& indices) const;

   private:
    std::vector<Token>          _tokens;
    std::vector<Transformation> _maps;
  };

  inline Transformation eval_word(Word const& w, GeneratorSet const& gens) {
    return gens.eval(w);
  }

  // Sorted, deduplicated, each in 1..6; throws DomainError otherwise.
  std::vector<int> normalize_open_cells(std::vector<int> cells);

}  // namespace pdkr

#endif  // PDKR_WORD_HPP_
