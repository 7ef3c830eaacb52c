#!/usr/bin/env python3
"""Regenerates crates/core/data/corpus.jsonl from the tables below."""
import json
import pathlib

DICT = "https://ccl.northwestern.edu/netlogo/docs/dict/"
PROG = "https://ccl.northwestern.edu/netlogo/docs/programming.html"
MODELS = "https://ccl.northwestern.edu/netlogo/models/"

# name | c/r | min | max (* = unbounded) | signature | categories | description
PRIMITIVES = r"""
forward|c|1|1|forward number|turtle,movement|The turtle moves forward by number steps, one step at a time, along its current heading. If number is negative the turtle moves backward.
back|c|1|1|back number|turtle,movement|The turtle moves backward by number steps, opposite to its heading. If number is negative the turtle moves forward instead.
left|c|1|1|left number|turtle,movement|The turtle turns left by number degrees, relative to its current heading.
right|c|1|1|right number|turtle,movement|The turtle turns right by number degrees, relative to its current heading.
jump|c|1|1|jump number|turtle,movement|The turtle moves forward by number units all at once rather than one step at a time. The jump is skipped if it would leave a non-wrapping world.
setxy|c|2|2|setxy x y|turtle,movement|The turtle sets its x-coordinate to x and its y-coordinate to y in a single step. Equivalent to setting xcor and ycor together.
move-to|c|1|1|move-to agent|turtle,movement|The turtle sets its x and y coordinates to be the same as the given agent's. Heading is unchanged. Often used as move-to one-of neighbors.
face|c|1|1|face agent|turtle,movement|Set the caller's heading towards agent. If wrapping is allowed the shortest wrapped path is used.
facexy|c|2|2|facexy x y|turtle,movement|Set the caller's heading towards the point (x,y).
home|c|0|0|home|turtle,movement|The turtle moves to the origin (0,0). Equivalent to setxy 0 0.
pen-up|c|0|0|pen-up|turtle,drawing|The turtle stops drawing lines as it moves.
pen-down|c|0|0|pen-down|turtle,drawing|The turtle draws a line in the drawing layer wherever it moves.
pen-erase|c|0|0|pen-erase|turtle,drawing|The turtle erases lines from the drawing layer as it moves.
hide-turtle|c|0|0|hide-turtle|turtle,appearance|The turtle makes itself invisible. Sets hidden? to true.
show-turtle|c|0|0|show-turtle|turtle,appearance|The turtle becomes visible again. Sets hidden? to false.
die|c|0|0|die|turtle,link|The turtle or link dies and is removed from the world. Any code after die in the same block is not run by that agent.
hatch|c|1|2|hatch number [ commands ]|turtle,creation|This turtle creates number new turtles. Each new turtle is identical to its parent and inherits its breed, variables, location and heading, then runs the optional commands.
sprout|c|1|2|sprout number [ commands ]|patch,creation|Creates number new turtles on the current patch, with random headings and colors, which then run the optional commands. Used by patches.
create-turtles|c|1|2|create-turtles number [ commands ]|observer,creation|Creates number new turtles at the origin with random headings and evenly spaced colors, which then run the optional commands. Observer only.
create-ordered-turtles|c|1|2|create-ordered-turtles number [ commands ]|observer,creation|Creates number new turtles whose headings are evenly spaced around the circle, which then run the optional commands.
tie|c|0|0|tie|link|Ties end1 and end2 of the link together so that moving or turning one end moves the other.
untie|c|0|0|untie|link|Unties the two ends of a link that were previously tied.
stamp|c|0|0|stamp|turtle,drawing|The turtle leaves an image of its shape in the drawing layer at its current location.
stamp-erase|c|0|0|stamp-erase|turtle,drawing|The turtle removes any pixels below it in the drawing layer.
uphill|c|1|1|uphill patch-variable|turtle,movement|Moves the turtle to the neighboring patch with the highest value for patch-variable, if that value is higher than the current patch.
downhill|c|1|1|downhill patch-variable|turtle,movement|Moves the turtle to the neighboring patch with the lowest value for patch-variable, if that value is lower than the current patch.
uphill4|c|1|1|uphill4 patch-variable|turtle,movement|Like uphill but only considers the four neighbors sharing an edge.
downhill4|c|1|1|downhill4 patch-variable|turtle,movement|Like downhill but only considers the four neighbors sharing an edge.
can-move?|r|1|1|can-move? distance|turtle,movement|Reports true if the turtle could move distance in the direction it is facing without violating the topology.
distance|r|1|1|distance agent|turtle,patch|Reports the distance from this agent to the given turtle or patch, taking wrapping into account.
distancexy|r|2|2|distancexy x y|turtle,patch|Reports the distance from this agent to the point (x,y).
towards|r|1|1|towards agent|turtle,patch|Reports the heading from this agent to the given agent.
towardsxy|r|2|2|towardsxy x y|turtle,patch|Reports the heading from the turtle or patch towards the point (x,y).
patch-ahead|r|1|1|patch-ahead distance|turtle,patch|Reports the single patch that is the given distance ahead of this turtle along its heading, or nobody if it is outside a non-wrapping world.
patch-left-and-ahead|r|2|2|patch-left-and-ahead angle distance|turtle,patch|Reports the patch at distance in the direction angle degrees to the left of the turtle's heading.
patch-right-and-ahead|r|2|2|patch-right-and-ahead angle distance|turtle,patch|Reports the patch at distance in the direction angle degrees to the right of the turtle's heading.
patch-here|r|0|0|patch-here|turtle,patch|Reports the patch under the turtle.
patch-at|r|2|2|patch-at dx dy|turtle,patch|Reports the patch at offset (dx, dy) from the caller.
turtles-here|r|0|0|turtles-here|turtle,agentset|Reports an agentset containing all the turtles on the caller's patch, including the caller itself if it is a turtle.
turtles-at|r|2|2|turtles-at dx dy|turtle,agentset|Reports an agentset containing the turtles on the patch at offset (dx, dy) from the caller.
turtles-on|r|1|1|turtles-on agent|turtle,agentset|Reports an agentset containing all the turtles standing on the given patch or patches, or on the patches under the given turtles.
other-end|r|0|0|other-end|link,turtle|Run by a turtle, reports the turtle at the other end of the asking link. Run by a link, reports the end that is not the asking turtle.
neighbors|r|0|0|neighbors|patch,agentset|Reports an agentset containing the 8 surrounding patches.
neighbors4|r|0|0|neighbors4|patch,agentset|Reports an agentset containing the 4 surrounding patches that share an edge with the caller.
in-radius|r|1|1|agentset in-radius number|agentset|Reports an agentset that includes only those agents from the original agentset whose distance from the caller is less than or equal to number.
in-cone|r|2|2|agentset in-cone distance angle|agentset|Reports an agentset of the agents from the original agentset that lie in a cone of vision in front of the turtle.
dx|r|0|0|dx|turtle|Reports the x-increment, the amount the turtle's xcor would change, if the turtle took one step forward.
dy|r|0|0|dy|turtle|Reports the y-increment, the amount the turtle's ycor would change, if the turtle took one step forward.
turtles|r|0|0|turtles|agentset,turtle|Reports the agentset consisting of all turtles.
patches|r|0|0|patches|agentset,patch|Reports the agentset consisting of all patches.
links|r|0|0|links|agentset,link|Reports the agentset consisting of all links.
turtle|r|1|1|turtle who-number|turtle|Reports the turtle with the given who number, or nobody if there is no such turtle.
patch|r|2|2|patch xcor ycor|patch|Given the x and y coordinates of a point, reports the patch containing that point.
link|r|2|2|link end1 end2|link|Given the who numbers of the endpoints, reports the link connecting the two turtles.
one-of|r|1|1|one-of agentset-or-list|agentset,list,random|From an agentset, reports a random agent. From a list, reports a random item. Reports nobody for an empty agentset.
n-of|r|2|2|n-of size agentset-or-list|agentset,list,random|Reports an agentset of size randomly chosen agents, or a list of size randomly chosen items without repeats.
up-to-n-of|r|2|2|up-to-n-of size agentset-or-list|agentset,list,random|Like n-of, but returns the whole input when it holds fewer than size elements.
max-one-of|r|2|2|max-one-of agentset [reporter]|agentset|Reports the agent in the agentset that has the highest value for the given reporter. Ties are broken randomly.
min-one-of|r|2|2|min-one-of agentset [reporter]|agentset|Reports the agent in the agentset that reports the lowest value for the given reporter. Ties are broken randomly.
max-n-of|r|3|3|max-n-of number agentset [reporter]|agentset|Reports an agentset containing number agents from agentset with the highest values of reporter.
min-n-of|r|3|3|min-n-of number agentset [reporter]|agentset|Reports an agentset containing number agents from agentset with the lowest values of reporter.
with|r|1|1|agentset with [reporter]|agentset|Takes two inputs: on the left, an agentset; on the right, a boolean reporter. Reports a new agentset containing only those agents that reported true.
with-max|r|1|1|agentset with-max [reporter]|agentset|Reports the subset of the agentset whose members report the maximum value of the reporter.
with-min|r|1|1|agentset with-min [reporter]|agentset|Reports the subset of the agentset whose members report the minimum value of the reporter.
of|r|1|1|[reporter] of agent|agentset|For an agent, reports the value of the reporter for that agent. For an agentset, reports a list containing the value for each agent in random order. Example: [color] of turtle 0.
any?|r|1|1|any? agentset|agentset,boolean|Reports true if the given agentset is non-empty, false otherwise.
all?|r|2|2|all? agentset [reporter]|agentset,boolean|Reports true if all of the agents in the agentset report true for the given reporter.
count|r|1|1|count agentset|agentset|Reports the number of agents in the given agentset.
other|r|1|1|other agentset|agentset|Reports an agentset which is the same as the input agentset but omits the calling agent.
self|r|0|0|self|agent|Reports this turtle, patch or link, the agent running the code.
myself|r|0|0|myself|agent|Reports the agent who asked this agent to run the current code, for instance inside ask or of.
nobody|r|0|0|nobody|agent,constant|A special value reported when there is no agent, for example by one-of on an empty agentset or when a turtle has died.
turtle-set|r|0|*|turtle-set value1 value2 ...|agentset,turtle|Reports an agentset containing all of the turtles anywhere in any of the inputs.
patch-set|r|0|*|patch-set value1 value2 ...|agentset,patch|Reports an agentset containing all of the patches anywhere in any of the inputs.
link-set|r|0|*|link-set value1 value2 ...|agentset,link|Reports an agentset containing all of the links anywhere in any of the inputs.
no-turtles|r|0|0|no-turtles|agentset,turtle|Reports an empty turtle agentset.
no-patches|r|0|0|no-patches|agentset,patch|Reports an empty patch agentset.
no-links|r|0|0|no-links|agentset,link|Reports an empty link agentset.
is-agent?|r|1|1|is-agent? value|type|Reports true if value is an agent of any type.
is-agentset?|r|1|1|is-agentset? value|type|Reports true if value is an agentset.
is-turtle?|r|1|1|is-turtle? value|type|Reports true if value is a turtle.
is-patch?|r|1|1|is-patch? value|type|Reports true if value is a patch.
is-link?|r|1|1|is-link? value|type|Reports true if value is a link.
is-number?|r|1|1|is-number? value|type|Reports true if value is a number.
is-string?|r|1|1|is-string? value|type|Reports true if value is a string.
is-list?|r|1|1|is-list? value|type|Reports true if value is a list.
is-boolean?|r|1|1|is-boolean? value|type|Reports true if value is true or false.
member?|r|2|2|member? value list-or-string-or-agentset|list,agentset,boolean|Reports true if value appears in the list, is a substring of the string, or belongs to the agentset.
sort|r|1|1|sort list-or-agentset|list,agentset|Reports a sorted list of numbers or strings, or of agents ordered by who number or patch position.
sort-by|r|2|2|sort-by reporter list-or-agentset|list|Reports a list sorted by the given two-input comparison reporter.
sort-on|r|2|2|sort-on [reporter] agentset|list,agentset|Reports a list of agents sorted by each agent's value for the reporter.
at-points|r|1|1|agentset at-points [[x1 y1] [x2 y2] ...]|agentset|Reports the subset of the agentset containing only agents on the patches at the given offsets.
ask|c|2|2|ask agentset [ commands ]|control,agentset|The specified agent or agentset runs the given commands. With an agentset, agents take turns in random order, each finishing before the next starts.
ask-concurrent|c|2|2|ask-concurrent agentset [ commands ]|control,agentset|The agents run the commands concurrently, taking turns after each command. Kept for compatibility with older models.
if|c|2|2|if condition [ commands ]|control|If condition reports true, runs the commands. The condition must report true or false.
ifelse|c|3|*|ifelse condition [ commands1 ] [ commands2 ]|control|If condition reports true, runs commands1, otherwise runs commands2. With parentheses it accepts extra condition and command pairs.
ifelse-value|r|3|*|ifelse-value condition [ reporter1 ] [ reporter2 ]|control|Reports the value of reporter1 if condition is true, otherwise the value of reporter2.
while|c|2|2|while [reporter] [ commands ]|control|If the reporter reports false, exit the loop. Otherwise run the commands and repeat.
repeat|c|2|2|repeat number [ commands ]|control|Runs the commands number times.
loop|c|1|1|loop [ commands ]|control|Repeats the commands forever, or until the enclosing procedure exits through stop or report.
stop|c|0|0|stop|control|The agent exits immediately from the enclosing procedure, ask, or ask-like construct. Inside a forever button it stops the button.
report|c|1|1|report value|control,procedure|Immediately exits from the current to-report procedure and reports value as its result.
foreach|c|2|*|foreach list command|control,list|Runs the anonymous command for each item of list, in order. With parentheses it walks several lists of equal length together.
carefully|c|2|2|carefully [ commands1 ] [ commands2 ]|control,error|Runs commands1. If a runtime error occurs inside commands1, runs commands2 instead of halting.
error|c|1|1|error value|control,error|Causes a runtime error with value as its message.
error-message|r|0|0|error-message|control,error|Reports the message of the error that was caught, inside the second block of carefully.
run|c|1|*|run command|control,anonymous|Runs the given anonymous command or the commands in the given string.
runresult|r|1|*|runresult reporter|control,anonymous|Runs the given anonymous reporter or the reporter in the given string and reports the result.
wait|c|1|1|wait number|control,time|Pauses execution for number seconds.
every|c|2|2|every number [ commands ]|control,time|Runs the commands only if it has been more than number seconds since the agent last ran them in this context.
without-interruption|c|1|1|without-interruption [ commands ]|control|Runs the commands without letting other agents in an ask-concurrent interrupt.
let|c|2|2|let variable value|variable|Creates a new local variable and gives it the given value. A local variable exists only within the enclosing block of commands.
set|c|2|2|set variable value|variable|Sets variable to value. The variable may be a global, a turtle, patch or link variable, or a local variable created by let.
with-local-randomness|c|1|1|with-local-randomness [ commands ]|random|Runs the commands without disturbing the state of the random number generator.
clear-all|c|0|0|clear-all|observer,world|Combines the effects of clear-globals, clear-ticks, clear-turtles, clear-patches, clear-drawing, clear-all-plots and clear-output. Usually the first line of setup.
clear-turtles|c|0|0|clear-turtles|observer,world|Kills all turtles and resets the who numbering.
clear-patches|c|0|0|clear-patches|observer,world|Clears the patches by resetting all patch variables to their default values, including setting their color to black.
clear-drawing|c|0|0|clear-drawing|observer,drawing|Clears all lines and stamps drawn by turtles.
clear-globals|c|0|0|clear-globals|observer,variable|Sets all code-defined global variables to 0.
clear-links|c|0|0|clear-links|observer,link|Kills all links.
clear-output|c|0|0|clear-output|observer,output|Clears all text from the model's output area.
clear-ticks|c|0|0|clear-ticks|observer,time|Clears the tick counter. Does not set the counter to zero; afterwards it is empty until reset-ticks.
clear-all-plots|c|0|0|clear-all-plots|observer,plotting|Clears every plot in the model.
reset-ticks|c|0|0|reset-ticks|observer,time|Resets the tick counter to zero, sets up all plots, then updates all plots. Usually the last line of setup.
tick|c|0|0|tick|observer,time|Advances the tick counter by one and updates all plots. Usually the last line of go.
tick-advance|c|1|1|tick-advance number|observer,time|Advances the tick counter by number without updating plots.
ticks|r|0|0|ticks|observer,time|Reports the current value of the tick counter.
setup-plots|c|0|0|setup-plots|plotting|Runs the setup code of every plot in the model.
update-plots|c|0|0|update-plots|plotting|Runs the update code of every plot in the model.
resize-world|c|4|4|resize-world min-pxcor max-pxcor min-pycor max-pycor|observer,world|Changes the size of the patch grid.
set-patch-size|c|1|1|set-patch-size size|observer,world|Sets the size of the patches of the view in pixels.
display|c|0|0|display|observer,view|Causes the view to be updated immediately.
no-display|c|0|0|no-display|observer,view|Turns off all updates to the view until display is used.
world-width|r|0|0|world-width|world|Reports the total width of the world in patches.
world-height|r|0|0|world-height|world|Reports the total height of the world in patches.
max-pxcor|r|0|0|max-pxcor|world|Reports the maximum x-coordinate for patches.
max-pycor|r|0|0|max-pycor|world|Reports the maximum y-coordinate for patches.
min-pxcor|r|0|0|min-pxcor|world|Reports the minimum x-coordinate for patches.
min-pycor|r|0|0|min-pycor|world|Reports the minimum y-coordinate for patches.
random-xcor|r|0|0|random-xcor|world,random|Reports a random floating point number from the allowable range of turtle x-coordinates.
random-ycor|r|0|0|random-ycor|world,random|Reports a random floating point number from the allowable range of turtle y-coordinates.
random-pxcor|r|0|0|random-pxcor|world,random|Reports a random integer ranging from min-pxcor to max-pxcor inclusive.
random-pycor|r|0|0|random-pycor|world,random|Reports a random integer ranging from min-pycor to max-pycor inclusive.
diffuse|c|2|2|diffuse patch-variable number|patch|Tells each patch to give equal shares of number times its patch-variable to its eight neighbors.
diffuse4|c|2|2|diffuse4 patch-variable number|patch|Like diffuse but shares only with the four neighbors that share an edge.
export-world|c|1|1|export-world filename|file|Writes the values of all variables, agents and plots to an external file.
user-message|c|1|1|user-message value|user|Opens a dialog with value displayed as the message.
user-input|r|1|1|user-input value|user|Opens a dialog with value as the prompt and reports the string the user typed.
user-yes-or-no?|r|1|1|user-yes-or-no? value|user,boolean|Asks the user a question and reports true or false depending on the answer.
user-one-of|r|2|2|user-one-of value list-of-choices|user|Asks the user to choose an item from the list and reports the selected item.
watch|c|1|1|watch agent|observer,view|Puts a spotlight on the agent.
follow|c|1|1|follow turtle|observer,view|Similar to ride, but in the 3D view the observer stands behind the turtle.
ride|c|1|1|ride turtle|observer,view|Sets the perspective to the turtle so the view moves with it.
reset-perspective|c|0|0|reset-perspective|observer,view|The observer stops watching, following or riding any turtle.
inspect|c|1|1|inspect agent|observer,view|Opens an agent monitor for the given agent.
stop-inspecting|c|1|1|stop-inspecting agent|observer,view|Closes the agent monitor for the given agent.
random|r|1|1|random number|math,random|If number is positive, reports a random integer greater than or equal to 0 but strictly less than number.
random-float|r|1|1|random-float number|math,random|Reports a random floating point number greater than or equal to 0 but strictly less than number.
random-normal|r|2|2|random-normal mean standard-deviation|math,random|Reports a normally distributed random floating point number.
random-poisson|r|1|1|random-poisson mean|math,random|Reports a Poisson-distributed random integer.
random-exponential|r|1|1|random-exponential mean|math,random|Reports an exponentially distributed random floating point number.
random-gamma|r|2|2|random-gamma alpha lambda|math,random|Reports a gamma-distributed random floating point number.
random-seed|c|1|1|random-seed number|math,random|Sets the seed of the pseudo-random number generator so that runs can be reproduced.
new-seed|r|0|0|new-seed|math,random|Reports a number suitable for seeding the random number generator.
abs|r|1|1|abs number|math|Reports the absolute value of number.
sqrt|r|1|1|sqrt number|math|Reports the square root of number.
exp|r|1|1|exp number|math|Reports the value of e raised to the number power.
ln|r|1|1|ln number|math|Reports the natural logarithm of number.
log|r|2|2|log number base|math|Reports the logarithm of number in the given base.
sin|r|1|1|sin number|math|Reports the sine of the given angle, measured in degrees.
cos|r|1|1|cos number|math|Reports the cosine of the given angle, measured in degrees.
tan|r|1|1|tan number|math|Reports the tangent of the given angle, measured in degrees.
asin|r|1|1|asin number|math|Reports the arc sine of number, in degrees.
acos|r|1|1|acos number|math|Reports the arc cosine of number, in degrees.
atan|r|2|2|atan x y|math|Converts x and y offsets to a turtle heading in degrees.
round|r|1|1|round number|math|Reports the integer nearest to number.
floor|r|1|1|floor number|math|Reports the largest integer less than or equal to number.
ceiling|r|1|1|ceiling number|math|Reports the smallest integer greater than or equal to number.
int|r|1|1|int number|math|Reports the integer part of number, dropping any fractional part.
precision|r|2|2|precision number places|math|Reports number rounded to places decimal places.
remainder|r|2|2|remainder number1 number2|math|Reports the remainder when number1 is divided by number2, with the sign of number1.
subtract-headings|r|2|2|subtract-headings heading1 heading2|math,turtle|Computes the smallest angle by which heading2 could be rotated to produce heading1.
e|r|0|0|e|math,constant|Mathematical constant, approximately 2.718.
pi|r|0|0|pi|math,constant|Mathematical constant, approximately 3.14159.
max|r|1|1|max list|math,list|Reports the maximum number value in the list, ignoring other types of items.
min|r|1|1|min list|math,list|Reports the minimum number value in the list, ignoring other types of items.
mean|r|1|1|mean list|math,list|Reports the statistical mean of the numeric items in the given list.
median|r|1|1|median list|math,list|Reports the statistical median of the numeric items of the given list.
sum|r|1|1|sum list|math,list|Reports the sum of the items in the list.
variance|r|1|1|variance list|math,list|Reports the sample variance of a list of numbers.
standard-deviation|r|1|1|standard-deviation list|math,list|Reports the sample standard deviation of a list of numbers.
not|r|1|1|not boolean|boolean|Reports true if boolean is false, otherwise reports false.
true|r|0|0|true|boolean,constant|The boolean constant true.
false|r|0|0|false|boolean,constant|The boolean constant false.
list|r|0|*|list value1 value2|list|Reports a list containing the given items. With parentheses it takes any number of inputs.
first|r|1|1|first list-or-string|list,string|On a list, reports the first item. On a string, reports a string containing only its first character.
last|r|1|1|last list-or-string|list,string|On a list, reports the last item. On a string, reports a string containing only its last character.
but-first|r|1|1|but-first list-or-string|list,string|Reports all of the list or string except the first item or character.
but-last|r|1|1|but-last list-or-string|list,string|Reports all of the list or string except the last item or character.
item|r|2|2|item index list-or-string|list,string|Reports the item at position index of the list or string, counting from zero.
length|r|1|1|length list-or-string|list,string|Reports the number of items in the list, or characters in the string.
fput|r|2|2|fput value list|list|Adds value to the beginning of a list and reports the new list.
lput|r|2|2|lput value list|list|Adds value to the end of a list and reports the new list.
remove|r|2|2|remove item list-or-string|list,string|Reports a copy of the list or string with every instance of item removed.
remove-item|r|2|2|remove-item index list-or-string|list,string|Reports a copy of the list or string with the item at the given index removed.
remove-duplicates|r|1|1|remove-duplicates list|list|Reports a copy of the list with all duplicate items removed, keeping the first of each.
replace-item|r|3|3|replace-item index list-or-string value|list,string|Reports a copy of the list or string with the item at index replaced by value.
insert-item|r|3|3|insert-item index list-or-string value|list,string|Reports a copy of the list or string with value inserted at index.
reverse|r|1|1|reverse list-or-string|list,string|Reports a reversed copy of the given list or string.
sentence|r|0|*|sentence value1 value2|list|Makes a list out of the values. Any input that is itself a list is spliced in rather than nested.
word|r|0|*|word value1 value2|string|Concatenates the inputs together and reports the result as a string.
position|r|2|2|position item list-or-string|list,string|Reports the first position of item in the list or string, or false if it does not appear.
empty?|r|1|1|empty? list-or-string|list,string,boolean|Reports true if the given list or string is empty.
map|r|2|*|map reporter list|list,anonymous|Applies the anonymous reporter to each item of the list and reports a list of the results.
filter|r|2|2|filter reporter list|list,anonymous|Reports a list of the items of list for which the boolean reporter reports true.
reduce|r|2|2|reduce reporter list|list,anonymous|Combines the items of list from left to right with a two-input reporter, reporting a single value.
n-values|r|2|2|n-values size reporter|list,anonymous|Reports a list of length size containing values computed by repeatedly running the reporter.
range|r|1|3|range stop|list|Generates a list of numbers from start up to but not including stop, with an optional step.
sublist|r|3|3|sublist list position1 position2|list|Reports the portion of the list from position1 up to but not including position2.
substring|r|3|3|substring string position1 position2|string|Reports the portion of the string from position1 up to but not including position2.
shuffle|r|1|1|shuffle list|list,random|Reports a new list containing the same items as the input list in a random order.
modes|r|1|1|modes list|list,math|Reports a list of the most common items in the list.
read-from-string|r|1|1|read-from-string string|string|Interprets the string as a NetLogo value and reports it, for example a number or a list.
show|c|1|1|show value|output|Prints value in the Command Center, preceded by the calling agent and followed by a carriage return.
print|c|1|1|print value|output|Prints value in the Command Center, followed by a carriage return.
type|c|1|1|type value|output|Prints value in the Command Center without a carriage return.
write|c|1|1|write value|output|Prints value in a form readable by read-from-string, without a carriage return.
output-print|c|1|1|output-print value|output|Like print, but writes to the output area of the model instead.
output-show|c|1|1|output-show value|output|Like show, but writes to the output area of the model instead.
plot|c|1|1|plot number|plotting|Increments the x-value of the current plot pen by the interval, then plots a point at that x-value and the given y-value.
plotxy|c|2|2|plotxy number1 number2|plotting|Moves the current plot pen to the point (number1, number2), drawing a line if the pen is down.
set-current-plot|c|1|1|set-current-plot plotname|plotting|Sets the current plot to the plot with the given name.
set-current-plot-pen|c|1|1|set-current-plot-pen penname|plotting|Sets the current plot pen to the pen with the given name in the current plot.
set-plot-pen-color|c|1|1|set-plot-pen-color number|plotting|Sets the color of the current plot pen.
set-plot-pen-mode|c|1|1|set-plot-pen-mode number|plotting|Sets the mode of the current plot pen: 0 line, 1 bar, 2 point.
set-plot-x-range|c|2|2|set-plot-x-range min max|plotting|Sets the minimum and maximum values of the x axis of the current plot.
set-plot-y-range|c|2|2|set-plot-y-range min max|plotting|Sets the minimum and maximum values of the y axis of the current plot.
set-histogram-num-bars|c|1|1|set-histogram-num-bars number|plotting|Sets the current plot pen's interval so that the x range is divided into number bars.
histogram|c|1|1|histogram list|plotting|Draws a histogram of the values in the given list.
plot-pen-down|c|0|0|plot-pen-down|plotting|Puts down the current plot pen so that it draws.
plot-pen-up|c|0|0|plot-pen-up|plotting|Lifts the current plot pen so that it stops drawing.
plot-pen-reset|c|0|0|plot-pen-reset|plotting|Clears everything the current plot pen has drawn and moves it to the origin.
clear-plot|c|0|0|clear-plot|plotting|Clears everything in the current plot.
create-link-with|c|1|2|create-link-with turtle [ commands ]|link,creation|Creates an undirected link between the caller and the given turtle.
create-links-with|c|1|2|create-links-with turtleset [ commands ]|link,creation|Creates undirected links between the caller and each turtle in the agentset.
create-link-to|c|1|2|create-link-to turtle [ commands ]|link,creation|Creates a directed link from the caller to the given turtle.
create-links-to|c|1|2|create-links-to turtleset [ commands ]|link,creation|Creates directed links from the caller to each turtle in the agentset.
create-link-from|c|1|2|create-link-from turtle [ commands ]|link,creation|Creates a directed link from the given turtle to the caller.
create-links-from|c|1|2|create-links-from turtleset [ commands ]|link,creation|Creates directed links from each turtle in the agentset to the caller.
link-neighbors|r|0|0|link-neighbors|link,agentset|Reports the agentset of all turtles found at the other end of any links connected to this turtle.
in-link-neighbors|r|0|0|in-link-neighbors|link,agentset|Reports the agentset of turtles with directed links into the caller, plus undirected neighbors.
out-link-neighbors|r|0|0|out-link-neighbors|link,agentset|Reports the agentset of turtles the caller has directed links to, plus undirected neighbors.
my-links|r|0|0|my-links|link,agentset|Reports an agentset of all links connected to the caller.
my-in-links|r|0|0|my-in-links|link,agentset|Reports an agentset of all directed links coming into the caller and undirected links connected to it.
my-out-links|r|0|0|my-out-links|link,agentset|Reports an agentset of all directed links going out from the caller and undirected links connected to it.
link-neighbor?|r|1|1|link-neighbor? turtle|link,boolean|Reports true if there is a link between the caller and the given turtle.
link-with|r|1|1|link-with turtle|link|Reports the link between the caller and the given turtle, or nobody.
link-length|r|0|0|link-length|link|Reports the distance between the endpoints of the link.
link-heading|r|0|0|link-heading|link|Reports the heading in degrees from end1 to end2 of the link.
both-ends|r|0|0|both-ends|link,agentset|Reports the agentset of the two nodes connected by the link.
layout-circle|c|2|2|layout-circle agentset-or-list radius|link,layout|Arranges the given turtles in a circle centered on the patch at the center of the world.
layout-spring|c|5|5|layout-spring turtle-set link-set spring-constant spring-length repulsion-constant|link,layout|Arranges the turtles as if the links were springs and the turtles repelled each other.
layout-radial|c|3|3|layout-radial turtle-set link-set root-agent|link,layout|Arranges the turtles in a radial tree layout centered on the root agent.
layout-tutte|c|3|3|layout-tutte turtle-set link-set radius|link,layout|Places the turtles according to the Tutte layout, fixing a subset on a circle.
who|r|0|0|who|turtle,variable|This is a built-in turtle variable. It holds the turtle's id number, an integer greater than or equal to zero.
color|r|0|0|color|turtle,variable,color|This is a built-in turtle or link variable. It holds the color of the turtle or link as a number or an RGB list.
heading|r|0|0|heading|turtle,variable,movement|This is a built-in turtle variable. It indicates the direction the turtle is facing, in degrees from 0 up to 360.
xcor|r|0|0|xcor|turtle,variable|This is a built-in turtle variable. It holds the current x coordinate of the turtle.
ycor|r|0|0|ycor|turtle,variable|This is a built-in turtle variable. It holds the current y coordinate of the turtle.
shape|r|0|0|shape|turtle,variable,appearance|This is a built-in turtle or link variable. It holds a string that is the name of the turtle's current shape, such as "wolf" or "sheep".
label|r|0|0|label|turtle,variable,appearance|This is a built-in turtle or link variable. It may hold a value of any type, displayed next to the agent in the view.
label-color|r|0|0|label-color|turtle,variable,appearance|This is a built-in turtle or link variable. It holds the color of the label.
hidden?|r|0|0|hidden?|turtle,variable,appearance|This is a built-in turtle or link variable. It holds a boolean value indicating whether the agent is currently hidden.
size|r|0|0|size|turtle,variable,appearance|This is a built-in turtle variable. It holds a number that is the turtle's apparent size, 1 by default.
pen-size|r|0|0|pen-size|turtle,variable,drawing|This is a built-in turtle variable holding the width of the line the turtle draws when the pen is down.
pen-mode|r|0|0|pen-mode|turtle,variable,drawing|This is a built-in turtle variable holding the state of the turtle's pen: "up", "down" or "erase".
breed|r|0|0|breed|turtle,variable|This is a built-in turtle or link variable. It holds the agentset of all turtles or links of the same breed.
pxcor|r|0|0|pxcor|patch,variable|This is a built-in patch variable. It holds the x coordinate of the patch, always an integer.
pycor|r|0|0|pycor|patch,variable|This is a built-in patch variable. It holds the y coordinate of the patch, always an integer.
pcolor|r|0|0|pcolor|patch,variable,color|This is a built-in patch variable. It holds the color of the patch, for example set pcolor green for grass.
plabel|r|0|0|plabel|patch,variable,appearance|This is a built-in patch variable. It may hold a value of any type, displayed on the patch in the view.
plabel-color|r|0|0|plabel-color|patch,variable,appearance|This is a built-in patch variable. It holds the color of the patch label.
end1|r|0|0|end1|link,variable|This is a built-in link variable. It indicates the first endpoint turtle of a link.
end2|r|0|0|end2|link,variable|This is a built-in link variable. It indicates the second endpoint turtle of a link.
thickness|r|0|0|thickness|link,variable,appearance|This is a built-in link variable holding the width of the link in patches.
tie-mode|r|0|0|tie-mode|link,variable|This is a built-in link variable holding the tie state of the link: "none", "fixed" or "free".
scale-color|r|4|4|scale-color color number range1 range2|color|Reports a shade of color proportional to the value of number within the range, useful for visualizing a patch variable.
rgb|r|3|3|rgb red green blue|color|Reports an RGB list for the given red, green and blue components.
hsb|r|3|3|hsb hue saturation brightness|color|Reports an RGB list for the given hue, saturation and brightness.
extract-rgb|r|1|1|extract-rgb color|color|Reports a list of three values giving the red, green and blue components of a NetLogo color number.
approximate-rgb|r|3|3|approximate-rgb red green blue|color|Reports the NetLogo color number closest to the given RGB values.
shade-of?|r|2|2|shade-of? color1 color2|color,boolean|Reports true if both colors are shades of one another.
base-colors|r|0|0|base-colors|color|Reports a list of the 14 basic NetLogo hues.
set-default-shape|c|2|2|set-default-shape turtles-or-links string|appearance|Specifies a default initial shape for all turtles or links, or for a particular breed.
timer|r|0|0|timer|time|Reports how many seconds have passed since reset-timer was last run or since NetLogo started.
reset-timer|c|0|0|reset-timer|time|Resets the timer to zero seconds.
date-and-time|r|0|0|date-and-time|time|Reports a string containing the current date and time.
netlogo-version|r|0|0|netlogo-version|system|Reports a string containing the version number of NetLogo being run.
behaviorspace-run-number|r|0|0|behaviorspace-run-number|system|Reports the current run number in the current BehaviorSpace experiment.
file-open|c|1|1|file-open string|file|Opens the file named by the string for reading or writing.
file-close|c|0|0|file-close|file|Closes the file that is currently open.
file-read|r|0|0|file-read|file|Reads the next constant from the opened file and interprets it as NetLogo code.
file-write|c|1|1|file-write value|file|Writes value to the opened file in a form readable by file-read.
file-print|c|1|1|file-print value|file|Prints value to the opened file followed by a carriage return.
file-exists?|r|1|1|file-exists? string|file,boolean|Reports true if the named file exists.
file-at-end?|r|0|0|file-at-end?|file,boolean|Reports true when there are no more characters left to read in the current file.
import-pcolors|c|1|1|import-pcolors filename|file,patch|Reads an image file, scales it to the patch grid, and sets each patch's pcolor from it.
beep|c|0|0|beep|system|Emits a beep.
""".strip()

ALIASES = {
    "fd": "forward", "bk": "back", "lt": "left", "rt": "right",
    "pu": "pen-up", "penup": "pen-up", "pd": "pen-down", "pendown": "pen-down",
    "pe": "pen-erase", "ht": "hide-turtle", "st": "show-turtle",
    "crt": "create-turtles", "cro": "create-ordered-turtles",
    "ca": "clear-all", "cd": "clear-drawing", "cp": "clear-patches", "ct": "clear-turtles",
    "bf": "but-first", "butfirst": "but-first", "bl": "but-last", "butlast": "but-last",
    "se": "sentence",
}

COLORS = ["black", "gray", "white", "red", "orange", "brown", "yellow", "green",
          "lime", "turquoise", "cyan", "sky", "blue", "violet", "magenta", "pink"]
COLOR_VALUES = {"black": 0, "gray": 5, "white": 9.9, "red": 15, "orange": 25, "brown": 35,
                "yellow": 45, "green": 55, "lime": 65, "turquoise": 75, "cyan": 85,
                "sky": 95, "blue": 105, "violet": 115, "magenta": 125, "pink": 135}

KEYWORDS = [
    ("to", "to procedure-name [ inputs ]", "Used to begin a command procedure. The procedure body ends with the matching end keyword. Every to needs exactly one end."),
    ("to-report", "to-report procedure-name [ inputs ]", "Used to begin a reporter procedure, which computes and reports a value with report. The body ends with end."),
    ("end", "end", "Used to conclude a procedure started with to or to-report."),
    ("globals", "globals [ var1 ... ]", "Declares global variables that every agent can access. Must appear at the top of the Code tab, before any procedures."),
    ("turtles-own", "turtles-own [ var1 ... ]", "Defines variables that belong to each turtle, for example energy in a predation model."),
    ("patches-own", "patches-own [ var1 ... ]", "Defines variables that all patches can use, for example countdown for regrowing grass."),
    ("links-own", "links-own [ var1 ... ]", "Defines variables that belong to each link."),
    ("breed", "breed [ plural-name singular-name ]", "Declares a breed of turtles such as wolves and sheep. Each breed gets its own agentset and generated primitives like create-wolves and wolves-here."),
    ("directed-link-breed", "directed-link-breed [ plural-name singular-name ]", "Declares a breed of directed links."),
    ("undirected-link-breed", "undirected-link-breed [ plural-name singular-name ]", "Declares a breed of undirected links."),
    ("extensions", "extensions [ name ... ]", "Tells NetLogo which extensions the model uses, such as csv or table."),
]

# name, camel-case path, categories, description, code excerpt
MODELS_TABLE = [
    ("Wolf Sheep Predation", "WolfSheepPredation", "biology,predation,ecosystem",
     "This wolf-sheep model explores the stability of predator-prey ecosystems. Wolves and sheep wander randomly around the landscape while wolves look for sheep to prey on. Each step costs energy; wolves and sheep must eat to replenish it and reproduce with a fixed probability. In the grass version sheep eat grass that regrows after a delay, which tends to stabilize the populations of the wolf sheep predation system.",
     "breed [ wolves wolf ]\nbreed [ sheep a-sheep ]\nturtles-own [ energy ]\nto go\n  ask sheep [ move eat-grass reproduce-sheep ]\n  ask wolves [ move eat-sheep reproduce-wolves death ]\n  tick\nend"),
    ("Flocking", "Flocking", "biology,flocking,emergence,birds",
     "This flocking model mimics the flocking of birds, similar to the motion of schools of fish. The flocks that appear are not created or led by any special leader. Each bird follows three rules: alignment, separation and cohesion, steering toward nearby flockmates while avoiding collisions.",
     "turtles-own [ flockmates nearest-neighbor ]\nto flock\n  find-flockmates\n  if any? flockmates [\n    find-nearest-neighbor\n    ifelse distance nearest-neighbor < minimum-separation [ separate ] [ align cohere ]\n  ]\nend"),
    ("Ants", "Ants", "biology,foraging,pheromone",
     "In this project a colony of ants forages for food. Each ant follows a set of simple rules, but the colony as a whole acts in a sophisticated way: when an ant finds food it carries it back to the nest, dropping a chemical pheromone trail that other ants follow.",
     "patches-own [ chemical food nest? ]\nto go\n  ask turtles [ ifelse color = red [ look-for-food ] [ return-to-nest ] wiggle fd 1 ]\n  diffuse chemical (diffusion-rate / 100)\n  tick\nend"),
    ("Fire", "Fire", "earth science,percolation,fire",
     "This project simulates the spread of a fire through a forest. The fire spreads from tree to neighboring tree, and whether it burns through the forest depends critically on the density of trees.",
     "to go\n  if not any? turtles [ stop ]\n  ask fires [ ask neighbors4 with [ pcolor = green ] [ ignite ] set breed embers ]\n  fade-embers\n  tick\nend"),
    ("Virus", "Virus", "biology,epidemiology,disease",
     "This model simulates the transmission and perpetuation of a virus in a human population. People move around, become infected, recover and gain immunity, or die.",
     "turtles-own [ sick? remaining-immunity sick-time age ]\nto go\n  ask turtles [ get-older move if sick? [ recover-or-die ] ifelse sick? [ infect ] [ reproduce ] ]\n  tick\nend"),
    ("Termites", "Termites", "biology,self-organization",
     "This project is inspired by the behavior of termites gathering wood chips into piles. Termites follow simple rules: pick up a chip, wander until finding another chip, then put the chip down nearby. The chips end up in a few large piles.",
     "to go\n  ask turtles [ search-for-chip find-new-pile put-down-chip ]\nend"),
    ("Segregation", "Segregation", "social science,segregation",
     "This project models the behavior of two types of agents in a neighborhood. Each agent wants a minimum percentage of similar neighbors and moves when unhappy; small individual preferences lead to large-scale segregation patterns.",
     "turtles-own [ happy? similar-nearby other-nearby ]\nto go\n  if all? turtles [ happy? ] [ stop ]\n  move-unhappy-turtles\n  update-turtles\n  tick\nend"),
    ("Traffic Basic", "TrafficBasic", "social science,traffic,cars",
     "This model models the movement of cars on a highway. Each car follows a simple rule: it slows down if there is a car close ahead and speeds up otherwise. Traffic jams form and travel backwards even though cars move forward.",
     "turtles-own [ speed speed-limit speed-min ]\nto go\n  ask turtles [ let car-ahead one-of turtles-on patch-ahead 1 ifelse car-ahead != nobody [ slow-down-car car-ahead ] [ speed-up-car ] fd speed ]\n  tick\nend"),
    ("Life", "Life", "computer science,cellular automata",
     "This program is an example of a two-dimensional cellular automaton, the Game of Life. Each patch is a cell that is alive or dead, and its next state depends on how many of its eight neighbors are alive.",
     "patches-own [ living? live-neighbors ]\nto go\n  ask patches [ set live-neighbors count neighbors with [ living? ] ]\n  ask patches [ ifelse live-neighbors = 3 [ cell-birth ] [ if live-neighbors != 2 [ cell-death ] ] ]\n  tick\nend"),
    ("Slime", "Slime", "biology,self-organization,aggregation",
     "This model shows how slime mold cells can aggregate into clusters without a leader. Each cell drops a chemical pheromone and turns toward higher concentrations of it.",
     "patches-own [ chemical ]\nto go\n  ask turtles [ if chemical > sniff-threshold [ turn-toward-chemical ] rt random-float wiggle-angle lt random-float wiggle-angle fd 1 set chemical chemical + 2 ]\n  diffuse chemical 1\n  tick\nend"),
    ("Rabbits Grass Weeds", "RabbitsGrassWeeds", "biology,ecosystem,energy",
     "This project explores a simple ecosystem made up of rabbits, grass and weeds. Rabbits wander randomly, eat grass and weeds for energy, reproduce when they have enough energy, and die when they run out.",
     "turtles-own [ energy ]\nto go\n  grow-grass-and-weeds\n  ask turtles [ move eat reproduce death ]\n  tick\nend"),
    ("Wealth Distribution", "WealthDistribution", "social science,economics,inequality",
     "This model is adapted from Sugarscape and explores the distribution of wealth. Agents harvest grain, age, and die, and the model shows how unequal wealth distributions emerge.",
     "turtles-own [ age wealth life-expectancy metabolism vision ]\nto go\n  ask turtles [ turn-towards-grain ]\n  harvest\n  ask turtles [ move-eat-age-die ]\n  tick\nend"),
    ("Voting", "Voting", "social science,opinion,cellular automata",
     "This model is a simple cellular automaton that simulates voting distribution by having each patch take a vote based on the majority vote of its neighbors.",
     "patches-own [ vote total ]\nto go\n  ask patches [ set total sum [ vote ] of neighbors ]\n  ask patches [ if total > 5 [ set vote 1 ] if total < 3 [ set vote 0 ] recolor-patch ]\n  tick\nend"),
    ("Heatbugs", "Heatbugs", "biology,temperature,swarm",
     "This model demonstrates how simple rules lead to the emergence of clusters. Each heatbug emits heat and tries to find a spot whose temperature is close to its ideal temperature.",
     "patches-own [ temp ]\nturtles-own [ ideal-temp output-heat unhappiness ]\nto go\n  diffuse temp diffusion-rate\n  ask turtles [ step ]\n  tick\nend"),
    ("Climate Change", "ClimateChange", "earth science,climate,energy",
     "This is a model of energy flow in the earth. Sunlight hits the earth, some is reflected, and some becomes heat. Infrared radiation and carbon dioxide molecules show the greenhouse effect and global warming.",
     "breed [ rays ray ]\nbreed [ CO2s CO2 ]\nto go\n  run-sunshine\n  run-heat\n  run-IR\n  run-CO2\n  tick\nend"),
    ("Percolation", "Percolation", "earth science,percolation,oil",
     "This model shows how an oil spill can percolate down through permeable soil. Soil porosity determines how far the oil reaches.",
     "to go\n  if not any? patches with [ pcolor = black ] [ stop ]\n  percolate\n  tick\nend"),
    ("Preferential Attachment", "PreferentialAttachment", "networks,links,scale-free",
     "In some networks a few hubs have lots of connections while everybody else only has a few. This model shows one way such networks can arise: new nodes prefer to link to nodes that already have many links.",
     "to go\n  make-node find-partner\n  tick\n  if layout? [ layout ]\nend\nto-report find-partner\n  report [ one-of both-ends ] of one-of links\nend"),
    ("Small Worlds", "SmallWorlds", "networks,links,small world",
     "This model explores the formation of networks that result in the small world phenomenon, the idea that a person is only a couple of connections away from any other person. Links in a ring lattice are randomly rewired.",
     "to rewire-all\n  ask links [ if random-float 1 < rewiring-probability [ rewire-me ] ]\nend"),
    ("Giant Component", "GiantComponent", "networks,links,phase transition",
     "In a network, a component is a group of nodes that are all connected to each other. This model shows how a giant component forms as links are added between random pairs of nodes.",
     "to go\n  add-edge\n  find-all-components\n  tick\nend"),
    ("Tumor", "Tumor", "biology,medicine,growth",
     "This model illustrates the growth of a tumor and how it resists chemical treatment. Stem cells divide into transitory cells that eventually die, and metastasis can occur.",
     "turtles-own [ stem? metastatic? age ]\nto go\n  ask turtles [ grow ]\n  tick\nend"),
    ("Shepherds", "Shepherds", "biology,herding,emergence",
     "This project is inspired by the Termites model. Shepherds wander around and herd sheep, pushing them into groups; over time the sheep are gathered into a few herds.",
     "breed [ sheep a-sheep ]\nbreed [ shepherds shepherd ]\nto go\n  ask shepherds [ search-for-sheep find-new-herd put-down-sheep ]\n  ask sheep [ wiggle ]\n  tick\nend"),
]

GUIDES = [
    ("Agents", "agents", "Programming guide: the NetLogo world is made up of agents that follow instructions. There are four types of agents: turtles, patches, links and the observer. Turtles move over a grid of patches."),
    ("Procedures", "procedures", "Programming guide: commands and reporters tell agents what to do. Procedures you define start with to or to-report and finish with end. Reporter procedures report a value with report."),
    ("Variables", "variables", "Programming guide: global variables are declared with globals, agent variables with turtles-own, patches-own and links-own, and local variables with let. Use set to change a variable's value."),
    ("Colors", "colors", "Programming guide: NetLogo represents colors as numbers from 0 to 140. Names such as red, green and blue are constants for the base hues; adding or subtracting makes a color lighter or darker."),
    ("Ask", "ask", "Programming guide: the ask command gives instructions to turtles, patches and links. Code inside ask runs in the context of each agent in turn."),
    ("Agentsets", "agentsets", "Programming guide: an agentset is a set of agents, such as all turtles with red color, or the patches within a radius. Use with, other, in-radius and one-of to build and select from agentsets."),
    ("Breeds", "breeds", "Programming guide: breeds let you define different kinds of turtles, such as wolves and sheep. A breed declaration creates new primitives like create-wolves, wolves-here and wolves-own."),
    ("Links", "links", "Programming guide: links are agents that connect two turtles. They can be directed or undirected and can have breeds and their own variables."),
    ("Lists", "lists", "Programming guide: lists hold ordered collections of values. Use list, fput, lput, item and sentence to build lists and foreach, map, filter and reduce to work with them."),
    ("Anonymous Procedures", "anonprocs", "Programming guide: anonymous procedures store code to be run later, written with the arrow syntax such as [ x -> x * 2 ]. They are used with foreach, map, filter and run."),
    ("Tick Counter", "tick-counter", "Programming guide: the tick counter measures model time. Call reset-ticks at the end of setup and tick at the end of go."),
    ("Code Tab Structure", "code-tab", "Programming guide: a model's Code tab starts with declarations such as globals, breed and turtles-own, followed by procedures. A setup procedure initializes the world and a go procedure runs one step."),
]


def url_for(name):
    slug = name.replace("?", "")
    return f"{DICT}{slug}.html"


def primitive_entries():
    rows = {}
    out = []
    for line in PRIMITIVES.splitlines():
        name, kind, lo, hi, sig, cats, desc = line.split("|")
        rows[name] = (kind, lo, hi, sig, cats, desc)
        out.append(prim(name, kind, lo, hi, sig, cats, desc, url_for(name)))
    for alias, target in ALIASES.items():
        kind, lo, hi, sig, cats, desc = rows[target]
        alias_sig = alias + sig[len(target):]
        alias_desc = f"{alias} is an abbreviation of {target}. {desc}"
        out.append(prim(alias, kind, lo, hi, alias_sig, cats, alias_desc, url_for(target)))
    for c in COLORS:
        out.append(prim(c, "r", "0", "0", c, "color,constant",
                        f"Color constant {c}, the NetLogo color number {COLOR_VALUES[c]}. "
                        f"Add or subtract up to 5 to get lighter or darker shades, for example set pcolor {c} - 2.",
                        f"{PROG}#colors"))
    return out


def prim(name, kind, lo, hi, sig, cats, desc, url):
    entry = {
        "id": f"prim:{name}",
        "kind": "primitive",
        "name": name,
        "signature": sig,
        "categories": cats.split(","),
        "body": desc,
        "url": url,
        "syntax": "command" if kind == "c" else "reporter",
        "arity_min": int(lo),
    }
    if hi != "*":
        entry["arity_max"] = int(hi)
    return entry


def main():
    entries = primitive_entries()
    for name, sig, desc in KEYWORDS:
        entries.append({"id": f"kw:{name}", "kind": "guide", "name": name, "signature": sig,
                        "categories": ["keyword"], "body": "Keyword. " + desc, "url": url_for(name)})
    for name, path, cats, desc, code in MODELS_TABLE:
        entries.append({"id": "model:" + path.lower(), "kind": "example-model", "name": name,
                        "categories": cats.split(","),
                        "body": f"{desc}\n\nCode excerpt:\n{code}",
                        "url": MODELS + path})
    for name, anchor, desc in GUIDES:
        entries.append({"id": "guide:" + anchor, "kind": "guide", "name": name,
                        "categories": ["programming guide"], "body": desc,
                        "url": f"{PROG}#{anchor}"})
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/corpus.jsonl"
    with out.open("w", encoding="utf-8", newline="\n") as f:
        for e in entries:
            f.write(json.dumps(e, ensure_ascii=False) + "\n")
    print(f"wrote {len(entries)} entries to {out}")


if __name__ == "__main__":
    main()
