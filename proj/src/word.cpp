#include "pdkr/word.hpp"

#include <algorithm>
#include <cctype>

#include "pdkr/errors.hpp"

namespace pdkr {

  std::string Token::to_string() const {
    switch (kind) {
      case Kind::step:
        return "t";
      case Kind::cooperate:
        return "c" + std::to_string(cell);
      case Kind::defect:
        return "d" + std::to_string(cell);
    }
    return "?";
  }

  Token parse_token(std::string_view text) {
    if (text == "t") {
      return Token::step();
    }
    if (text.size() == 2 && (text[0] == 'c' || text[0] == 'd') && text[1] >= '1'
        && text[1] <= '0' + kCells) {
      int cell = text[1] - '0';
      return text[0] == 'c' ? Token::cooperate(cell) : Token::defect(cell);
    }
    throw ParseError("invalid token '" + std::string(text) + "'");
  }

  Word parse_word(std::string_view text) {
    Word        w;
    std::size_t i        = 0;
    std::size_t position = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      std::string_view piece = text.substr(i, j - i);
      ++position;
      try {
        w.push_back(parse_token(piece));
      } catch (ParseError const&) {
        throw ParseError("invalid token '" + std::string(piece) + "' at position "
                         + std::to_string(position) + " (column " + std::to_string(i + 1)
                         + "); expected t, c1..c6 or d1..d6");
      }
      i = j;
    }
    return w;
  }

  std::string to_string(Word const& w) {
    std::string out;
    for (Token const& tok : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += tok.to_string();
    }
    return out;
  }

  bool shortlex_less(Word const& a, Word const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::vector<int> normalize_open_cells(std::vector<int> cells) {
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i] < 1 || cells[i] > kCells) {
        throw DomainError("open cell " + std::to_string(cells[i]) + " outside 1.." + std::to_string(kCells));
      }
      if (i > 0 && cells[i] == cells[i - 1]) {
        throw DomainError("open cell " + std::to_string(cells[i]) + " listed twice");
      }
    }
    return cells;
  }

  GeneratorSet::GeneratorSet(Rational const& b, std::vector<int> const& open_cells) {
    _tokens.push_back(Token::step());
    _maps.push_back(step_map(b));
    for (int cell : normalize_open_cells(open_cells)) {
      _tokens.push_back(Token::cooperate(cell));
      _maps.push_back(reset_map(cell, Strategy::cooperate));
      _tokens.push_back(Token::defect(cell));
      _maps.push_back(reset_map(cell, Strategy::defect));
    }
  }

  GeneratorSet GeneratorSet::from_pairs(std::vector<std::pair<Token, Transformation>> pairs) {
    std::sort(pairs.begin(), pairs.end(), [](auto const& x, auto const& y) { return x.first < y.first; });
    GeneratorSet gens;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i > 0 && pairs[i].first == pairs[i - 1].first) {
        throw DomainError("generator " + pairs[i].first.to_string() + " given twice");
      }
      gens._tokens.push_back(pairs[i].first);
      gens._maps.push_back(pairs[i].second);
    }
    return gens;
  }

  std::optional<std::size_t> GeneratorSet::find(Token const& tok) const noexcept {
    auto it = std::find(_tokens.begin(), _tokens.end(), tok);
    if (it == _tokens.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _tokens.begin());
  }

  Transformation GeneratorSet::eval(Word const& w) const {
    Transformation f;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto idx = find(w[i]);
      if (!idx) {
        throw DomainError("token '" + w[i].to_string() + "' at position " + std::to_string(i + 1)
                          + " is not a generator of this configuration");
      }
      f = compose(f, _maps[*idx]);
    }
    return f;
  }

  Transformation GeneratorSet::eval_indices(std::vector<std::uint8_t> const& w) const {
    Transformation f;
    for (std::uint8_t g : w) {
      f = compose(f, _maps.at(g));
    }
    return f;
  }

  Word GeneratorSet::word_of(std::vector<std::uint8_t> const& indices) const {
    Word w;
    w.reserve(indices.size());
    for (std::uint8_t g : indices) {
      w.push_back(_tokens.at(g));
    }
    return w;
  }

}  // namespace pdkr
