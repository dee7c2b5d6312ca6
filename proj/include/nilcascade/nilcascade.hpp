#pragma once

#include "cascade.hpp"
#include "centgen.hpp"
#include "coadj.hpp"
#include "criterion.hpp"
#include "envalg.hpp"
#include "error.hpp"
#include "liealg.hpp"
#include "linalg.hpp"
#include "linear_form.hpp"
#include "rational.hpp"
#include "rootsys.hpp"
#include "symalg.hpp"
