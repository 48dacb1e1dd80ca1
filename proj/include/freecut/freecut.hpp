#ifndef FREECUT_FREECUT_HPP
#define FREECUT_FREECUT_HPP

#include "freecut/cayley.hpp"
#include "freecut/cutsets.hpp"
#include "freecut/error.hpp"
#include "freecut/genericity.hpp"
#include "freecut/parallel.hpp"
#include "freecut/pattern.hpp"
#include "freecut/ray.hpp"
#include "freecut/whitehead.hpp"
#include "freecut/word.hpp"

#endif  // FREECUT_FREECUT_HPP
