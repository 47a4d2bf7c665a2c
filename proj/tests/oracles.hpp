#pragma once

#include "schreierlab/oracle.hpp"

namespace oracle = schreierlab::oracle;
