/*
Copyright 2026 The contagionlab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <string_view>

namespace contagionlab {

// Contents of data/default_lexicon.tsv. Keep the two in sync; the unit
// tests compare them.
inline constexpr std::string_view kDefaultLexiconTsv = R"LEX(
# Bundled default lexicon: term<TAB>kind<TAB>value
# kind: sent (strength +-2..+-5), boost (shift -2..+2), neg (value 0), emo (strength +-2..+-5)
like	sent	2
nice	sent	2
fine	sent	2
glad	sent	2
fun	sent	2
cool	sent	2
pleased	sent	2
interesting	sent	2
helpful	sent	2
calm	sent	2
hope	sent	2
hopeful	sent	2
enjoy	sent	2
thanks	sent	2
thank	sent	2
smile	sent	2
win	sent	2
safe	sent	2
fair	sent	2
relaxed	sent	2
lucky	sent	2
sweet	sent	2
kind	sent	2
cute	sent	2
funny	sent	2
peaceful	sent	2
comfortable	sent	2
better	sent	2
good	sent	3
great	sent	3
happy	sent	3
love	sent	3
lovely	sent	3
awesome	sent	3
beautiful	sent	3
excellent	sent	3
wonderful	sent	3
proud	sent	3
joy	sent	3
laugh	sent	3
exciting	sent	3
excited	sent	3
yay	sent	3
congrats	sent	3
congratulations	sent	3
brilliant	sent	3
delighted	sent	3
cheerful	sent	3
grateful	sent	3
thankful	sent	3
enjoyable	sent	3
blessed	sent	3
loving	sent	3
hooray	sent	3
glorious	sent	3
delightful	sent	3
impressive	sent	3
inspiring	sent	3
amazing	sent	4
fantastic	sent	4
adore	sent	4
perfect	sent	4
superb	sent	4
thrilled	sent	4
incredible	sent	4
marvelous	sent	4
ecstatic	sent	5
euphoric	sent	5
magnificent	sent	5
phenomenal	sent	5
boring	sent	-2
tired	sent	-2
annoyed	sent	-2
worried	sent	-2
sorry	sent	-2
miss	sent	-2
lonely	sent	-2
bored	sent	-2
confused	sent	-2
weird	sent	-2
ugh	sent	-2
unfair	sent	-2
lame	sent	-2
dull	sent	-2
nervous	sent	-2
stressed	sent	-2
meh	sent	-2
worse	sent	-2
problem	sent	-2
sucks	sent	-2
tough	sent	-2
lose	sent	-2
bad	sent	-3
sad	sent	-3
angry	sent	-3
upset	sent	-3
cry	sent	-3
crying	sent	-3
hurt	sent	-3
pain	sent	-3
sick	sent	-3
fear	sent	-3
afraid	sent	-3
scared	sent	-3
mad	sent	-3
fail	sent	-3
failed	sent	-3
stupid	sent	-3
annoying	sent	-3
disappointed	sent	-3
broken	sent	-3
ugly	sent	-3
unhappy	sent	-3
gloomy	sent	-3
painful	sent	-3
sorrow	sent	-3
grief	sent	-3
anxious	sent	-3
hate	sent	-4
awful	sent	-4
terrible	sent	-4
depressed	sent	-4
horrible	sent	-4
disgusting	sent	-4
miserable	sent	-4
furious	sent	-4
hopeless	sent	-4
tragic	sent	-4
cruel	sent	-4
heartbroken	sent	-4
worst	sent	-5
devastated	sent	-5
hateful	sent	-5
tragedy	sent	-5
very	boost	1
really	boost	1
so	boost	1
extremely	boost	2
super	boost	1
totally	boost	1
absolutely	boost	2
incredibly	boost	2
truly	boost	1
quite	boost	1
most	boost	1
too	boost	1
especially	boost	1
completely	boost	1
deeply	boost	1
utterly	boost	2
somewhat	boost	-1
slightly	boost	-1
barely	boost	-1
kinda	boost	-1
little	boost	-1
fairly	boost	-1
rather	boost	-1
hardly	boost	-2
mildly	boost	-1
sorta	boost	-1
not	neg	0
no	neg	0
never	neg	0
dont	neg	0
don't	neg	0
cant	neg	0
can't	neg	0
cannot	neg	0
isn't	neg	0
isnt	neg	0
wasn't	neg	0
wasnt	neg	0
aren't	neg	0
arent	neg	0
won't	neg	0
wont	neg	0
didn't	neg	0
didnt	neg	0
doesn't	neg	0
doesnt	neg	0
nothing	neg	0
nobody	neg	0
neither	neg	0
nor	neg	0
without	neg	0
couldn't	neg	0
shouldn't	neg	0
wouldn't	neg	0
hasn't	neg	0
haven't	neg	0
ain't	neg	0
none	neg	0
:)	emo	2
:-)	emo	2
:d	emo	3
:-d	emo	3
=)	emo	2
;)	emo	2
<3	emo	3
^_^	emo	2
:p	emo	2
:-p	emo	2
(:	emo	2
:(	emo	-2
:-(	emo	-2
:'(	emo	-3
d:	emo	-3
-_-	emo	-2
:/	emo	-2
:-/	emo	-2
>:(	emo	-4
</3	emo	-3
):	emo	-2
=(	emo	-2
)LEX";

}  // namespace contagionlab
