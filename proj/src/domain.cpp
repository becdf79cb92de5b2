#include "gridforge/domain.hpp"

#include <cstdlib>

namespace gridforge {

namespace {

[[noreturn]] void bad_name(std::string_view kind, std::string_view value) {
  throw ConfigError("unknown " + std::string(kind) + ": '" + std::string(value) + "'");
}

}  // namespace

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::circle: return "circle";
    case Shape::square: return "square";
    case Shape::cylinder: return "cylinder";
  }
  std::abort();
}

std::string_view to_string(Color c) {
  switch (c) {
    case Color::red: return "red";
    case Color::green: return "green";
    case Color::blue: return "blue";
    case Color::yellow: return "yellow";
  }
  std::abort();
}

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::north: return "north";
    case Heading::east: return "east";
    case Heading::south: return "south";
    case Heading::west: return "west";
  }
  std::abort();
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::walk: return "walk";
    case Action::push: return "push";
    case Action::pull: return "pull";
    case Action::stay: return "stay";
    case Action::turn_left: return "L_turn";
    case Action::turn_right: return "R_turn";
  }
  std::abort();
}

std::string_view to_string(Verb v) {
  switch (v) {
    case Verb::walk: return "walk";
    case Verb::push: return "push";
    case Verb::pull: return "pull";
  }
  std::abort();
}

std::string_view to_string(Adverb a) {
  switch (a) {
    case Adverb::none: return "none";
    case Adverb::cautiously: return "cautiously";
    case Adverb::hesitantly: return "hesitantly";
    case Adverb::while_spinning: return "while_spinning";
    case Adverb::while_zigzagging: return "while_zigzagging";
  }
  std::abort();
}

std::string_view to_string(SizeWord s) {
  switch (s) {
    case SizeWord::none: return "none";
    case SizeWord::small: return "small";
    case SizeWord::big: return "big";
  }
  std::abort();
}

std::string_view to_string(AdjectiveOrder o) {
  return o == AdjectiveOrder::size_first ? "size_first" : "color_first";
}

std::string_view to_string(Convention c) {
  return c == Convention::horizontal_first ? "horizontal_first" : "vertical_first";
}

std::string_view to_string(Direction8 d) {
  switch (d) {
    case Direction8::north: return "north";
    case Direction8::north_east: return "north_east";
    case Direction8::east: return "east";
    case Direction8::south_east: return "south_east";
    case Direction8::south: return "south";
    case Direction8::south_west: return "south_west";
    case Direction8::west: return "west";
    case Direction8::north_west: return "north_west";
  }
  std::abort();
}

std::optional<Shape> try_shape_from_string(std::string_view s) {
  for (Shape v : kAllShapes)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<Color> try_color_from_string(std::string_view s) {
  for (Color v : kAllColors)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<SizeWord> try_size_word_from_string(std::string_view s) {
  if (s == "small") return SizeWord::small;
  if (s == "big") return SizeWord::big;
  if (s == "none") return SizeWord::none;
  return std::nullopt;
}

std::optional<Action> try_action_from_string(std::string_view s) {
  for (Action a : {Action::walk, Action::push, Action::pull, Action::stay, Action::turn_left,
                   Action::turn_right})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

Shape shape_from_string(std::string_view s) {
  if (auto v = try_shape_from_string(s)) return *v;
  bad_name("shape", s);
}

Color color_from_string(std::string_view s) {
  if (auto v = try_color_from_string(s)) return *v;
  bad_name("color", s);
}

Heading heading_from_string(std::string_view s) {
  for (Heading h : kAllHeadings)
    if (to_string(h) == s) return h;
  bad_name("heading", s);
}

Action action_from_string(std::string_view s) {
  if (auto a = try_action_from_string(s)) return *a;
  bad_name("action", s);
}

Verb verb_from_string(std::string_view s) {
  for (Verb v : {Verb::walk, Verb::push, Verb::pull})
    if (to_string(v) == s) return v;
  bad_name("verb", s);
}

Adverb adverb_from_string(std::string_view s) {
  for (Adverb a : {Adverb::none, Adverb::cautiously, Adverb::hesitantly, Adverb::while_spinning,
                   Adverb::while_zigzagging})
    if (to_string(a) == s) return a;
  bad_name("adverb", s);
}

SizeWord size_word_from_string(std::string_view s) {
  if (auto v = try_size_word_from_string(s)) return *v;
  bad_name("size word", s);
}

AdjectiveOrder adjective_order_from_string(std::string_view s) {
  if (s == "size_first") return AdjectiveOrder::size_first;
  if (s == "color_first") return AdjectiveOrder::color_first;
  bad_name("adjective order", s);
}

Direction8 direction_from_string(std::string_view s) {
  for (Direction8 d : kAllDirections)
    if (to_string(d) == s) return d;
  bad_name("direction", s);
}

Cell heading_delta(Heading h) {
  switch (h) {
    case Heading::north: return {-1, 0};
    case Heading::east: return {0, 1};
    case Heading::south: return {1, 0};
    case Heading::west: return {0, -1};
  }
  std::abort();
}

Cell direction_delta(Direction8 d) {
  switch (d) {
    case Direction8::north: return {-1, 0};
    case Direction8::north_east: return {-1, 1};
    case Direction8::east: return {0, 1};
    case Direction8::south_east: return {1, 1};
    case Direction8::south: return {1, 0};
    case Direction8::south_west: return {1, -1};
    case Direction8::west: return {0, -1};
    case Direction8::north_west: return {-1, -1};
  }
  std::abort();
}

bool is_diagonal(Direction8 d) {
  Cell delta = direction_delta(d);
  return delta.row != 0 && delta.col != 0;
}

Heading opposite(Heading h) {
  switch (h) {
    case Heading::north: return Heading::south;
    case Heading::east: return Heading::west;
    case Heading::south: return Heading::north;
    case Heading::west: return Heading::east;
  }
  std::abort();
}

std::optional<Direction8> direction_between(Cell from, Cell to) {
  int dr = to.row - from.row;
  int dc = to.col - from.col;
  if (dr == 0 && dc == 0) return std::nullopt;
  if (dr == 0) return dc > 0 ? Direction8::east : Direction8::west;
  if (dc == 0) return dr > 0 ? Direction8::south : Direction8::north;
  if (dr < 0 && dc > 0) return Direction8::north_east;
  if (dr > 0 && dc > 0) return Direction8::south_east;
  if (dr > 0 && dc < 0) return Direction8::south_west;
  return Direction8::north_west;
}

}  // namespace gridforge
