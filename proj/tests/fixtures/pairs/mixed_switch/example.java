switch (type) {
  case 1:
    show("one");
    break;
  case 2:
    show("two");
    break;
}
