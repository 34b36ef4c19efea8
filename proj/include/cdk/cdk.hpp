#pragma once

// Umbrella header for the whole library.

#include "cdk/driver.hpp"
#include "cdk/extract.hpp"
#include "cdk/parse.hpp"
#include "cdk/print.hpp"
#include "cdk/reduce.hpp"
#include "cdk/syntax.hpp"
#include "cdk/translate.hpp"
#include "cdk/typecheck.hpp"
