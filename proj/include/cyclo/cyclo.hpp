#pragma once

#include "cyclo/acceptance.hpp"
#include "cyclo/codes.hpp"
#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/export.hpp"
#include "cyclo/frobenius.hpp"
#include "cyclo/graph.hpp"
#include "cyclo/graph_checks.hpp"
#include "cyclo/ideal.hpp"
#include "cyclo/lattice.hpp"
