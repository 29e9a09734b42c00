#pragma once

// Umbrella header. The CLI front end lives separately in cli.hpp.

#include <legendre_hgf/characters.hpp>
#include <legendre_hgf/classical.hpp>
#include <legendre_hgf/congruence.hpp>
#include <legendre_hgf/curves.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/ffhyper.hpp>
#include <legendre_hgf/field.hpp>
#include <legendre_hgf/survey.hpp>
