long total = 0;
add(total);
