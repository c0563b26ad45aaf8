#pragma once

#include <fracgame/fracgame.hpp>

#include <vector>

namespace fixtures {

using fracgame::Coalition;
using fracgame::Game;
using fracgame::Rational;

inline Rational q(long num, long den = 1) { return Rational(num, den); }

inline std::vector<Rational> point(std::initializer_list<Rational> xs) { return xs; }

/// v(C) = |C|.
inline Game<Rational> additive3() {
  return Game<Rational>::from_function(3, [](Coalition c) { return Rational(c.size()); });
}

/// Singletons 1, pairs 3, grand coalition 6.
inline Game<Rational> superadditive3() {
  return Game<Rational>::from_function(3, [](Coalition c) {
    return c.size() == 1 ? Rational(1) : c.size() == 2 ? Rational(3) : Rational(6);
  });
}

/// Singletons 2, pairs 3, grand coalition 4: the grand coalition cannot pay everyone.
inline Game<Rational> crowded3() {
  return Game<Rational>::from_function(3, [](Coalition c) {
    return c.size() == 1 ? Rational(2) : c.size() == 2 ? Rational(3) : Rational(4);
  });
}

/// Zero singletons, {1,2} and {3,4} worth 10, other proper coalitions 1, N worth 12.
inline Game<Rational> g4gap() {
  const Coalition a = Coalition::of({0, 1});
  const Coalition b = Coalition::of({2, 3});
  return Game<Rational>::from_function(4, [=](Coalition c) {
    if (c.size() == 1) return Rational(0);
    if (c == a || c == b) return Rational(10);
    if (c.size() == 4) return Rational(12);
    return Rational(1);
  });
}

template <class Fn>
Game<Rational> by_size(int n, Fn&& fn) {
  return Game<Rational>::from_function(n, [&](Coalition c) { return Rational(fn(c.size())); });
}

}  // namespace fixtures
