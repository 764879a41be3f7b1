#pragma once

#include "zerosum/char3.hpp"
#include "zerosum/errors.hpp"
#include "zerosum/extractor.hpp"
#include "zerosum/gen.hpp"
#include "zerosum/group.hpp"
#include "zerosum/oracle.hpp"
#include "zerosum/sumfull.hpp"
#include "zerosum/witness.hpp"
