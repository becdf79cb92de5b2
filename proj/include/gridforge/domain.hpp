#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridforge {

enum class Shape : uint8_t { circle, square, cylinder };
enum class Color : uint8_t { red, green, blue, yellow };
enum class Heading : uint8_t { north, east, south, west };
enum class Action : uint8_t { walk, push, pull, stay, turn_left, turn_right };
enum class Verb : uint8_t { walk, push, pull };
enum class Adverb : uint8_t { none, cautiously, hesitantly, while_spinning, while_zigzagging };
enum class SizeWord : uint8_t { none, small, big };
enum class AdjectiveOrder : uint8_t { size_first, color_first };
enum class Convention : uint8_t { horizontal_first, vertical_first };

// Compass direction from the agent to the target. Row 0 is the north edge,
// column 0 the west edge.
enum class Direction8 : uint8_t {
  north, north_east, east, south_east, south, south_west, west, north_west
};

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline constexpr std::array<Shape, 3> kAllShapes{Shape::circle, Shape::square, Shape::cylinder};
inline constexpr std::array<Color, 4> kAllColors{Color::red, Color::green, Color::blue,
                                                 Color::yellow};
inline constexpr std::array<Heading, 4> kAllHeadings{Heading::north, Heading::east, Heading::south,
                                                     Heading::west};
inline constexpr std::array<Direction8, 8> kAllDirections{
    Direction8::north, Direction8::north_east, Direction8::east, Direction8::south_east,
    Direction8::south, Direction8::south_west, Direction8::west, Direction8::north_west};
inline constexpr int kMinObjectSize = 1;
inline constexpr int kMaxObjectSize = 4;

std::string_view to_string(Shape s);
std::string_view to_string(Color c);
std::string_view to_string(Heading h);
std::string_view to_string(Action a);
std::string_view to_string(Verb v);
std::string_view to_string(Adverb a);
std::string_view to_string(SizeWord s);
std::string_view to_string(AdjectiveOrder o);
std::string_view to_string(Convention c);
std::string_view to_string(Direction8 d);

Shape shape_from_string(std::string_view s);
Color color_from_string(std::string_view s);
Heading heading_from_string(std::string_view s);
Action action_from_string(std::string_view s);
Verb verb_from_string(std::string_view s);
Adverb adverb_from_string(std::string_view s);
SizeWord size_word_from_string(std::string_view s);
AdjectiveOrder adjective_order_from_string(std::string_view s);
Direction8 direction_from_string(std::string_view s);

std::optional<Shape> try_shape_from_string(std::string_view s);
std::optional<Color> try_color_from_string(std::string_view s);
std::optional<SizeWord> try_size_word_from_string(std::string_view s);
std::optional<Action> try_action_from_string(std::string_view s);

// Unit row/col step for a heading or compass direction.
Cell heading_delta(Heading h);
Cell direction_delta(Direction8 d);
bool is_diagonal(Direction8 d);
Heading opposite(Heading h);

// Direction from `from` to `to`; nullopt when the cells coincide or the
// offset is neither straight nor strictly diagonal-compatible. Diagonal
// directions cover any offset with both components nonzero.
std::optional<Direction8> direction_between(Cell from, Cell to);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PlanningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gridforge
