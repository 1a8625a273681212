ts four_state_autonomous
states 4
L = [0 0 1 0
     1 0 0 0
     1 1 0 0
     0 0 1 1]
