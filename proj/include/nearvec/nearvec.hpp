#pragma once

#include "classify.hpp"
#include "combinatorics.hpp"
#include "counting.hpp"
#include "error.hpp"
#include "field.hpp"
#include "group.hpp"
#include "number.hpp"
#include "sequences.hpp"
#include "subgroups.hpp"
#include "verify.hpp"
