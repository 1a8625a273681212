# Four states, two inputs, three outputs; nondeterministic.
ts four_state
states 4
inputs 2
outputs 3

trans 1 1 -> 2 3
trans 2 1 -> 2 3
trans 2 2 -> 4
trans 3 2 -> 2 3
trans 4 1 -> 2 4

obs 1 -> 1
obs 2 -> 2
obs 3 -> 3
obs 4 -> 2
