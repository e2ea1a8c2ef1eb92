#pragma once

// Umbrella header: the whole toolkit.

#include "gsokit/dot.hpp"
#include "gsokit/document.hpp"
#include "gsokit/errors.hpp"
#include "gsokit/extensions.hpp"
#include "gsokit/gso.hpp"
#include "gsokit/model.hpp"
#include "gsokit/observations.hpp"
#include "gsokit/psl.hpp"
#include "gsokit/relgraph.hpp"
#include "gsokit/validation.hpp"
