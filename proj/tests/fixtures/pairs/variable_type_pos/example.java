int total = 0;
add(total);
