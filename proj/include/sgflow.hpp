#pragma once

#include "sgflow/error.hpp"
#include "sgflow/rational.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/primitives.hpp"
#include "sgflow/structure.hpp"
#include "sgflow/solve.hpp"
#include "sgflow/lp.hpp"
#include "sgflow/circular.hpp"
#include "sgflow/conversion.hpp"
#include "sgflow/decomposition.hpp"
#include "sgflow/normalization.hpp"
#include "sgflow/corpus.hpp"
#include "sgflow/oracle.hpp"
#include "sgflow/io.hpp"
#include "sgflow/suites.hpp"
