#pragma once

// Umbrella header for the riscleanse library.

#include "riscleanse/config.hpp"
#include "riscleanse/consolidate.hpp"
#include "riscleanse/csv.hpp"
#include "riscleanse/errors.hpp"
#include "riscleanse/gazetteer.hpp"
#include "riscleanse/lexicon.hpp"
#include "riscleanse/match.hpp"
#include "riscleanse/parse.hpp"
#include "riscleanse/pipeline.hpp"
#include "riscleanse/profile.hpp"
#include "riscleanse/record.hpp"
#include "riscleanse/record_io.hpp"
#include "riscleanse/similarity.hpp"
#include "riscleanse/standardize.hpp"
#include "riscleanse/union_find.hpp"
