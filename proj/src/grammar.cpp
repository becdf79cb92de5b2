#include "gridforge/grammar.hpp"

#include <algorithm>
#include <set>

namespace gridforge {

namespace {

bool contains_size_none(const std::vector<SizeWord>& sizes) {
  return std::find(sizes.begin(), sizes.end(), SizeWord::none) != sizes.end();
}

std::vector<std::string> description_tokens(const SemanticFrame& frame, AdjectiveOrder order) {
  std::vector<std::string> out;
  std::string size_word(frame.size == SizeWord::none ? "" : to_string(frame.size));
  std::string color_word(frame.color ? to_string(*frame.color) : std::string_view{});
  if (order == AdjectiveOrder::size_first) {
    if (!size_word.empty()) out.push_back(size_word);
    if (!color_word.empty()) out.push_back(color_word);
  } else {
    if (!color_word.empty()) out.push_back(color_word);
    if (!size_word.empty()) out.push_back(size_word);
  }
  out.emplace_back(to_string(frame.shape));
  return out;
}

}  // namespace

void GrammarConfig::validate() const {
  if (verbs.empty()) throw ConfigError("grammar: verb set must not be empty");
  if (shapes.empty()) throw ConfigError("grammar: shape set must not be empty");
  if (determiner != "a" && determiner != "the")
    throw ConfigError("grammar: determiner must be 'a' or 'the'");
  if (adjective_orders.empty())
    throw ConfigError("grammar: at least one adjective order required");
  for (Adverb a : adverbs)
    if (a == Adverb::none) throw ConfigError("grammar: 'none' is implicit in the adverb set");
  for (SizeWord s : sizes)
    if (s == SizeWord::none) throw ConfigError("grammar: 'none' is implicit in the size set");
  auto has_dup = [](auto v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_dup(verbs) || has_dup(adverbs) || has_dup(colors) || has_dup(sizes) ||
      has_dup(shapes) || has_dup(adjective_orders))
    throw ConfigError("grammar: duplicate entries in a token set");
}

std::vector<std::string> adverb_tokens(Adverb adverb) {
  switch (adverb) {
    case Adverb::none: return {};
    case Adverb::cautiously: return {"cautiously"};
    case Adverb::hesitantly: return {"hesitantly"};
    case Adverb::while_spinning: return {"while", "spinning"};
    case Adverb::while_zigzagging: return {"while", "zigzagging"};
  }
  return {};
}

CommandTokens realize(const SemanticFrame& frame, AdjectiveOrder order,
                      const std::string& determiner) {
  CommandTokens tokens;
  tokens.emplace_back(to_string(frame.verb));
  if (frame.verb == Verb::walk) tokens.emplace_back("to");
  tokens.push_back(determiner);
  for (auto& t : description_tokens(frame, order)) tokens.push_back(std::move(t));
  for (auto& t : adverb_tokens(frame.adverb)) tokens.push_back(std::move(t));
  return tokens;
}

std::string referred_target(const SemanticFrame& frame, AdjectiveOrder order) {
  return join_tokens(description_tokens(frame, order));
}

std::string join_tokens(const CommandTokens& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<CommandTokens> enumerate_commands(const GrammarConfig& config) {
  config.validate();

  // Description variants: bare shape, one size word, one color, or both
  // adjectives under each enabled order.
  struct Description {
    SizeWord size;
    std::optional<Color> color;
    AdjectiveOrder order;
  };
  std::vector<Description> descriptions;
  descriptions.push_back({SizeWord::none, std::nullopt, AdjectiveOrder::size_first});
  for (SizeWord s : config.sizes)
    descriptions.push_back({s, std::nullopt, AdjectiveOrder::size_first});
  for (Color c : config.colors)
    descriptions.push_back({SizeWord::none, c, AdjectiveOrder::size_first});
  for (SizeWord s : config.sizes)
    for (Color c : config.colors)
      for (AdjectiveOrder order : config.adjective_orders) descriptions.push_back({s, c, order});

  std::vector<Adverb> adverbs{Adverb::none};
  adverbs.insert(adverbs.end(), config.adverbs.begin(), config.adverbs.end());

  std::vector<CommandTokens> commands;
  for (Verb verb : config.verbs)
    for (Adverb adverb : adverbs)
      for (Shape shape : config.shapes)
        for (const Description& d : descriptions) {
          SemanticFrame frame{verb, adverb, d.size, d.color, shape};
          commands.push_back(realize(frame, d.order, config.determiner));
        }

  std::sort(commands.begin(), commands.end());
  commands.erase(std::unique(commands.begin(), commands.end()), commands.end());
  return commands;
}

SemanticFrame parse(const CommandTokens& tokens) {
  if (tokens.empty()) throw ParseError("parse error: empty command");
  size_t pos = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    std::string token = pos < tokens.size() ? tokens[pos] : "<end>";
    return ParseError("parse error at '" + token + "': " + why);
  };
  auto peek = [&]() -> const std::string* {
    return pos < tokens.size() ? &tokens[pos] : nullptr;
  };

  SemanticFrame frame;

  if (tokens[pos] == "walk")
    frame.verb = Verb::walk;
  else if (tokens[pos] == "push")
    frame.verb = Verb::push;
  else if (tokens[pos] == "pull")
    frame.verb = Verb::pull;
  else
    throw fail("expected a verb (walk, push, pull)");
  ++pos;

  if (frame.verb == Verb::walk) {
    if (!peek() || *peek() != "to") throw fail("expected 'to' after 'walk'");
    ++pos;
  }

  if (!peek() || (*peek() != "a" && *peek() != "the"))
    throw fail("expected a determiner ('a' or 'the')");
  ++pos;

  // Adjectives until the shape noun: at most one size word, one color.
  bool saw_size = false, saw_color = false;
  std::optional<Shape> shape;
  while (peek()) {
    const std::string& t = *peek();
    if (auto s = try_shape_from_string(t)) {
      shape = *s;
      ++pos;
      break;
    }
    if (t == "small" || t == "big") {
      if (saw_size) throw fail("second size word in description");
      saw_size = true;
      frame.size = size_word_from_string(t);
      ++pos;
      continue;
    }
    if (auto c = try_color_from_string(t)) {
      if (saw_color) throw fail("second color word in description");
      saw_color = true;
      frame.color = *c;
      ++pos;
      continue;
    }
    throw fail("expected an adjective or shape noun");
  }
  if (!shape) throw fail("expected a shape noun (circle, square, cylinder)");
  frame.shape = *shape;

  if (peek()) {
    const std::string& t = *peek();
    if (t == "cautiously")
      frame.adverb = Adverb::cautiously;
    else if (t == "hesitantly")
      frame.adverb = Adverb::hesitantly;
    else if (t == "while") {
      ++pos;
      if (!peek()) throw fail("expected 'spinning' or 'zigzagging' after 'while'");
      if (*peek() == "spinning")
        frame.adverb = Adverb::while_spinning;
      else if (*peek() == "zigzagging")
        frame.adverb = Adverb::while_zigzagging;
      else
        throw fail("expected 'spinning' or 'zigzagging' after 'while'");
    } else
      throw fail("expected an adverb or end of command");
    ++pos;
  }
  if (peek()) throw fail("unexpected token after the adverb");

  return frame;
}

std::optional<AdjectiveOrder> observed_order(const CommandTokens& tokens) {
  std::optional<size_t> size_at, color_at;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "small" || tokens[i] == "big") size_at = i;
    if (try_color_from_string(tokens[i])) color_at = i;
  }
  if (!size_at || !color_at) return std::nullopt;
  return *size_at < *color_at ? AdjectiveOrder::size_first : AdjectiveOrder::color_first;
}

}  // namespace gridforge
