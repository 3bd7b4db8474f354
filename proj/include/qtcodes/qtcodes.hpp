// Umbrella header for the quasi-twisted code workbench.

#ifndef QTCODES_QTCODES_HPP
#define QTCODES_QTCODES_HPP

#include "galois.hpp"
#include "lincode.hpp"
#include "polyring.hpp"
#include "qtcore.hpp"
#include "random.hpp"
#include "search.hpp"
#include "workbench/bklc.hpp"
#include "workbench/config.hpp"
#include "workbench/fixtures.hpp"
#include "workbench/records.hpp"

#endif  // QTCODES_QTCODES_HPP
