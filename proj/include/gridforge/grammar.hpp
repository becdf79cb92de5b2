#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridforge/domain.hpp"

namespace gridforge {

using CommandTokens = std::vector<std::string>;

// Parsed meaning of a command: verb, optional manner adverb, and the target
// referent description (size word, color, shape).
struct SemanticFrame {
  Verb verb = Verb::walk;
  Adverb adverb = Adverb::none;
  SizeWord size = SizeWord::none;
  std::optional<Color> color;
  Shape shape = Shape::circle;

  friend bool operator==(const SemanticFrame&, const SemanticFrame&) = default;
};

// Command-language configuration: which verbs, adverbs and referent
// adjectives are enabled, the surface determiner, and which adjective
// orderings are emitted when a description carries both a size and a color.
struct GrammarConfig {
  std::vector<Verb> verbs{Verb::walk, Verb::push, Verb::pull};
  std::vector<Adverb> adverbs{Adverb::cautiously, Adverb::hesitantly, Adverb::while_spinning,
                              Adverb::while_zigzagging};
  std::vector<Color> colors{Color::red, Color::green, Color::blue, Color::yellow};
  std::vector<SizeWord> sizes{SizeWord::small, SizeWord::big};
  std::vector<Shape> shapes{Shape::circle, Shape::square, Shape::cylinder};
  std::string determiner = "the";
  std::vector<AdjectiveOrder> adjective_orders{AdjectiveOrder::size_first,
                                               AdjectiveOrder::color_first};

  void validate() const;  // throws ConfigError

  friend bool operator==(const GrammarConfig&, const GrammarConfig&) = default;
};

// Every distinct command derivable under the config, each exactly once, in
// lexicographic token order. Descriptions carry at most one size word and at
// most one color; when both are present, each enabled adjective order yields
// its own command.
std::vector<CommandTokens> enumerate_commands(const GrammarConfig& config);

// Tokens -> frame. Accepts either determiner ('a' or 'the') and either
// adjective order. Throws ParseError naming the first offending token.
SemanticFrame parse(const CommandTokens& tokens);

// Frame -> tokens; inverse of parse under the given adjective order.
CommandTokens realize(const SemanticFrame& frame, AdjectiveOrder order,
                      const std::string& determiner = "the");

// Adverb surface tokens ("while spinning" is two tokens).
std::vector<std::string> adverb_tokens(Adverb adverb);

// Referent description as it appears in the command, without the determiner
// (e.g. "small red circle").
std::string referred_target(const SemanticFrame& frame, AdjectiveOrder order);

// Adjective order observed in a token sequence; nullopt when the command has
// fewer than two adjectives and the order is immaterial.
std::optional<AdjectiveOrder> observed_order(const CommandTokens& tokens);

std::string join_tokens(const CommandTokens& tokens);

}  // namespace gridforge
