#pragma once

#include "schreierlab/averages.hpp"
#include "schreierlab/block_vector.hpp"
#include "schreierlab/check_log.hpp"
#include "schreierlab/config.hpp"
#include "schreierlab/config_search.hpp"
#include "schreierlab/finite_set.hpp"
#include "schreierlab/gauge.hpp"
#include "schreierlab/greedy.hpp"
#include "schreierlab/norm_result.hpp"
#include "schreierlab/numeric.hpp"
#include "schreierlab/oracle.hpp"
#include "schreierlab/ordinal.hpp"
#include "schreierlab/partition.hpp"
#include "schreierlab/schreier.hpp"
#include "schreierlab/space_four.hpp"
#include "schreierlab/space_three.hpp"
#include "schreierlab/spaces.hpp"
#include "schreierlab/verify.hpp"
