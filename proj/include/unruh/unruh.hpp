#pragma once

#include "boson.hpp"
#include "error.hpp"
#include "evaluate.hpp"
#include "fermion.hpp"
#include "format.hpp"
#include "linalg.hpp"
#include "measures.hpp"
#include "oracle.hpp"
#include "partition.hpp"
#include "states.hpp"
#include "sweep.hpp"
