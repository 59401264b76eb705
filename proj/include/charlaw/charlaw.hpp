// Umbrella header.
#pragma once

#include "charlaw/batch.hpp"
#include "charlaw/haar.hpp"
#include "charlaw/laws.hpp"
#include "charlaw/linalg.hpp"
#include "charlaw/opuc.hpp"
#include "charlaw/product_laws.hpp"
#include "charlaw/random.hpp"
#include "charlaw/report.hpp"
#include "charlaw/stats.hpp"
