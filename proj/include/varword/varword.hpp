// Umbrella header for the variable-words toolkit.
#pragma once

#include "varword/bounds.hpp"
#include "varword/certificate.hpp"
#include "varword/coloring.hpp"
#include "varword/error.hpp"
#include "varword/exact_search.hpp"
#include "varword/finite_unions.hpp"
#include "varword/gr_solver.hpp"
#include "varword/insensitivity.hpp"
#include "varword/largenat.hpp"
#include "varword/word.hpp"
