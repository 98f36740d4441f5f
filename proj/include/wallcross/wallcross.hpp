#pragma once

#include "wallcross/catalog.hpp"
#include "wallcross/cech.hpp"
#include "wallcross/floer.hpp"
#include "wallcross/laurent.hpp"
#include "wallcross/novikov.hpp"
#include "wallcross/numeric.hpp"
#include "wallcross/parser.hpp"
#include "wallcross/polyvector.hpp"
#include "wallcross/report.hpp"
#include "wallcross/runner.hpp"
#include "wallcross/scattering.hpp"
#include "wallcross/scenario.hpp"
#include "wallcross/substitution.hpp"
