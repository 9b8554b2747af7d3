#pragma once

// Umbrella header for the finite universal algebra workbench.

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/catalog.hpp"
#include "ualg/common.hpp"
#include "ualg/cong_equation.hpp"
#include "ualg/congruence.hpp"
#include "ualg/consequence.hpp"
#include "ualg/free_algebra.hpp"
#include "ualg/io.hpp"
#include "ualg/maltsev.hpp"
#include "ualg/matrix_power.hpp"
#include "ualg/partition.hpp"
#include "ualg/term.hpp"
#include "ualg/term_enum.hpp"
#include "ualg/transformers.hpp"
