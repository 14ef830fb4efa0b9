#ifndef REDUP_REDUP_HPP
#define REDUP_REDUP_HPP

#include "redup/alphabet.hpp"
#include "redup/dsl/compiler.hpp"
#include "redup/enrichment.hpp"
#include "redup/errors.hpp"
#include "redup/fsa.hpp"
#include "redup/grammar_kit.hpp"
#include "redup/interpretation.hpp"
#include "redup/io.hpp"
#include "redup/language.hpp"
#include "redup/lazy.hpp"
#include "redup/normalize.hpp"
#include "redup/rules.hpp"

#endif // REDUP_REDUP_HPP
