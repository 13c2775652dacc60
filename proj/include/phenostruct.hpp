#pragma once

#include "phenostruct/catalog.hpp"
#include "phenostruct/core.hpp"
#include "phenostruct/counting.hpp"
#include "phenostruct/heap.hpp"
#include "phenostruct/identity.hpp"
#include "phenostruct/laws.hpp"
#include "phenostruct/motions.hpp"
#include "phenostruct/numeric.hpp"
#include "phenostruct/report.hpp"
#include "phenostruct/rng.hpp"
#include "phenostruct/suite.hpp"
#include "phenostruct/verify.hpp"
