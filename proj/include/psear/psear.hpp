#pragma once

// Umbrella header.

#include "psear/complex.hpp"
#include "psear/ears.hpp"
#include "psear/engine.hpp"
#include "psear/error.hpp"
#include "psear/generate.hpp"
#include "psear/graph.hpp"
#include "psear/io.hpp"
#include "psear/multicomplex.hpp"
#include "psear/util.hpp"
