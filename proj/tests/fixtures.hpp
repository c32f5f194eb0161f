#pragma once

#include <tuple>
#include <vector>

// c(1,1) for p = 2, d = 1, omega = 1 on shells 1..5, as (n, j, num, den).
// Every other (n, j) with n <= 5 vanishes.
inline const std::vector<std::tuple<int, int, long, long>>& example_shells() {
  static const std::vector<std::tuple<int, int, long, long>> v = {
      {1, 1, 1, 1},      {2, 2, 1, 2},     {2, 4, -1, 2},     {3, 3, 1, 6},     {3, 5, -1, 4},
      {3, 9, 1, 12},     {4, 4, 7, 144},   {4, 6, -1, 10},    {4, 8, 1, 32},    {4, 10, 1, 36},
      {4, 16, -11, 1440}, {5, 5, 19, 1440}, {5, 7, -37, 1080}, {5, 9, 5, 256},   {5, 11, 5, 504},
      {5, 13, -1, 144},  {5, 17, -11, 5760}, {5, 25, 113, 241920},
  };
  return v;
}
