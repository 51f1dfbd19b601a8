#pragma once

#include "skewcanon/acceptance.hpp"
#include "skewcanon/blocks.hpp"
#include "skewcanon/canon.hpp"
#include "skewcanon/closure.hpp"
#include "skewcanon/eigenvalue.hpp"
#include "skewcanon/generic.hpp"
#include "skewcanon/io.hpp"
#include "skewcanon/linearize.hpp"
#include "skewcanon/numeric.hpp"
#include "skewcanon/pencil.hpp"
#include "skewcanon/sampling.hpp"
