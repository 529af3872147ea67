#pragma once

// Umbrella header.

#include "backend.hpp"
#include "cayley.hpp"
#include "chordality.hpp"
#include "dehn.hpp"
#include "error.hpp"
#include "groups.hpp"
#include "json_io.hpp"
#include "parallel.hpp"
#include "presets.hpp"
#include "rational.hpp"
#include "separators.hpp"
#include "words.hpp"
